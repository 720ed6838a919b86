import pytest

from starpi.catalog import TheoremId, generators_for
from starpi.consequences import (ConsequenceStrategy, slice_consequences, t_ideal_consequences_in_bound,
                                 t_space_consequences_in_bound, wrapped_family)
from starpi.decision import EvalMode, Slice, is_central_poly, is_identity
from starpi.errors import BoundTooSmall, ModeFieldMismatch
from starpi.field import get_field
from starpi.freealg import involute_word, words_up_to
from starpi.grammar import parse_polynomial
from starpi.ut2 import InvolutionKind

F3, F5, Q = get_field("F3"), get_field("F5"), get_field("Q")
STAR = InvolutionKind.STAR


def P(text, field=F3):
    return parse_polynomial(text, field)


def _symmetric_count(letters, bound):
    """Dimension of the symmetric polynomials of degree <= bound: one per
    orbit {w, w*} whose symmetrisation w + w* is nonzero."""
    seen, count = set(), 0
    for w in words_up_to(letters, bound):
        if w in seen:
            continue
        rw, sign = involute_word(w)
        seen.update({w, rw})
        if not (rw == w and sign < 0):
            count += 1
    return count


def test_symmetric_variable_generates_every_symmetric_polynomial():
    span = t_space_consequences_in_bound([P("y1")], 2)
    letters = (1, 2, -1, -2)
    assert span.dim == _symmetric_count(letters, 2)
    for w in words_up_to(letters, 2):
        m = P("1").__class__.word(F3, w)
        assert span.contains(m + m.involute())


def test_renaming_instances():
    span = t_space_consequences_in_bound([P("z1*z2")], 2)
    for text in ("z1*z2", "z1^2", "z2*z1", "z2^2"):
        assert span.contains(P(text))
    assert span.universe and all(len(w) == 2 and all(a < 0 for a in w) for w in span.universe)


def test_unit_shift_in_characteristic_three():
    span = t_space_consequences_in_bound([P("y1^3")], 3)
    assert span.contains(P("y1^3"))
    assert span.contains(P("(y1 + 1)^3"))
    assert span.contains(P("1"))


def test_ideal_wrapping_instances():
    span = t_ideal_consequences_in_bound([P("[y1,y2]")], 3)
    for text in ("[y1,y2]", "y3*[y1,y2]", "[y1,y2]*y3"):
        assert span.contains(P(text))
    span = t_ideal_consequences_in_bound([P("z1")], 2)
    for text in ("z1", "y1*z1", "z1*y1", "z1*z2", "z2*z1", "z1^2"):
        assert span.contains(P(text))


def test_preconditions():
    with pytest.raises(BoundTooSmall):
        t_space_consequences_in_bound([P("y1^3")], 2)
    with pytest.raises(BoundTooSmall):
        t_ideal_consequences_in_bound([P("[y1,y2]")], 1)
    with pytest.raises(ModeFieldMismatch):
        t_space_consequences_in_bound([P("y1", Q)], 2, ConsequenceStrategy(coefficient_set="all"))
    with pytest.raises(ValueError):
        ConsequenceStrategy(max_support=0)


def test_default_strategies():
    assert ConsequenceStrategy.default_for(F3) == ConsequenceStrategy(2, 2, "all")
    assert ConsequenceStrategy.default_for(Q).coefficient_set == "unit_pairs"


def test_wrapped_family_uses_fresh_variables():
    fam = wrapped_family([P("[y1,y2]", Q)])
    texts = {str(parse_polynomial("y3*[y1,y2]*y4", Q)), str(parse_polynomial("z1*[y1,y2]*y3", Q))}
    assert texts <= {str(f) for f in fam}


def test_generic_regime_rows_are_multihomogeneous():
    span = t_space_consequences_in_bound([P("y1^2 + y1", Q)], 2, mode=EvalMode.generic_char0())
    assert span.contains(P("y1", Q))
    assert span.contains(P("y1^2", Q))


def test_consequences_of_identities_are_identities():
    mode = EvalMode.finite_exhaustive(F3)
    gens = [g for g in generators_for(TheoremId.IdStarInfinite, field=F3) if g.degree() <= 3]
    span = t_ideal_consequences_in_bound(gens, 3)
    assert span.dim > 0
    for f in span.polynomials():
        assert is_identity(f, STAR, mode)


def test_consequences_of_central_polynomials_are_central():
    mode = EvalMode.generic_char0()
    span = t_space_consequences_in_bound([P("z1*z2", Q)], 3, mode=mode)
    assert span.dim > 0
    for f in span.polynomials():
        assert is_central_poly(f, STAR, mode)


def test_unit_pairs_and_all_agree_over_a_prime_field():
    gens = [P("[z1,z2]"), P("z1*y1*z2 - z2*y1*z1")]
    a = t_space_consequences_in_bound(gens, 3, ConsequenceStrategy(2, 2, "all"))
    b = t_space_consequences_in_bound(gens, 3, ConsequenceStrategy(2, 2, "unit_pairs"))
    assert a.contains_span(b)


def test_slice_consequences_restrict_to_a_slice():
    letters = (1, -1)
    cons = slice_consequences([P("z1*z2", F5)], [], letters, 2, ConsequenceStrategy(), EvalMode.finite_exhaustive(F5))
    sl = Slice.from_maps({}, {1: 2})
    span = cons.in_slice(sl)
    assert span.dim == 1 and span.contains(P("z1^2", F5))
