import pytest
from hypothesis import given, strategies as st

from conftest import star_polys
from starpi.errors import DescriptorMismatch, SymmetryViolation
from starpi.field import get_field
from starpi.freealg import (MultiDegree, StarPolynomial, commutator, left_normed_commutator, words_of_multidegree,
                            words_up_to, y, z)
from starpi.grammar import parse_polynomial

F3, F5, Q = get_field("F3"), get_field("F5"), get_field("Q")


def P(text, field=Q):
    return parse_polynomial(text, field)


def test_products_and_units():
    assert y(1, Q) * z(1, Q) == StarPolynomial.word(Q, (1, -1))
    one = StarPolynomial.constant(Q)
    assert (y(1, Q) + z(1, Q)) * one == y(1, Q) + z(1, Q)
    assert 2 * (2 * y(1, F3)) == y(1, F3)


def test_mixed_fields_rejected():
    with pytest.raises(DescriptorMismatch):
        y(1, F3) + y(1, F5)


def test_involution_examples():
    assert P("y1*z1*y2").involute() == -P("y2*z1*y1")
    assert P("z1*z2").involute() == P("z2*z1")


def test_commutators():
    assert commutator(y(1, Q), y(1, Q)).is_zero()
    assert commutator(z(1, Q), y(1, Q)) == P("z1*y1 - y1*z1")
    # [[z1,y1],y2] expanded by hand
    expected = P("z1*y1*y2 - y1*z1*y2 - y2*z1*y1 + y2*y1*z1")
    assert left_normed_commutator([z(1, Q), y(1, Q), y(2, Q)]) == expected
    assert len(expected.terms) == 4


def test_sym_skew_split_examples():
    f = P("y1*z1")
    plus, minus = f.sym_skew_split()
    assert plus == P("1/2*(y1*z1 - z1*y1)")
    assert minus == P("1/2*(y1*z1 + z1*y1)")
    assert plus.involute() == plus and minus.involute() == -minus
    assert P("y1").sym_skew_split() == (P("y1"), P("0"))
    assert P("z1").sym_skew_split() == (P("0"), P("z1"))


def test_multihomogeneous_components_examples():
    comps = P("y1*z1 + z1*y1").multihomogeneous_components()
    assert len(comps) == 1
    assert comps[0][0] == MultiDegree.from_maps({1: 1}, {1: 1})
    assert len(P("y1 + y1^2").multihomogeneous_components()) == 2


def test_substitution_examples():
    f = commutator(y(1, Q), y(2, Q))
    assert f.substitute({1: y(2, Q), 2: y(1, Q)}) == -f
    assert P("z1*z2").substitute({-1: z(1, Q), -2: z(1, Q)}) == P("z1^2")
    with pytest.raises(SymmetryViolation):
        y(1, Q).substitute({1: P("y1*z1")})


def test_words_of_multidegree_counts():
    md = MultiDegree.from_maps({1: 2}, {1: 1, 2: 1})
    words = words_of_multidegree(md)
    assert len(words) == 12  # 4! / 2!
    assert len(set(words)) == 12
    assert all(MultiDegree.of_word(w) == md for w in words)


def test_words_up_to_includes_empty_word():
    words = words_up_to((1, -1), 2)
    assert () in words
    assert len(words) == 1 + 2 + 4


def test_multidegree_text():
    assert str(MultiDegree.of_word((1, -1, -1))) == "y1 z1^2"


polys = star_polys(Q)
polys3 = star_polys(F3)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    assert f - f == StarPolynomial.zero(Q)


@given(polys, polys)
def test_involution_is_anti_automorphism(f, g):
    assert (f * g).involute() == g.involute() * f.involute()
    assert f.involute().involute() == f


@given(polys3)
def test_split_symmetry_equations(f):
    plus, minus = f.sym_skew_split()
    assert plus.involute() == plus
    assert minus.involute() == -minus
    assert plus + minus == f


@given(polys)
def test_components_sum_to_polynomial(f):
    total = StarPolynomial.zero(Q)
    for md, comp in f.multihomogeneous_components():
        assert all(MultiDegree.of_word(w) == md for w in comp.terms)
        total = total + comp
    assert total == f


@given(polys, polys, polys, polys)
def test_substitution_commutes_with_involution(f, a, b, c):
    ya = a + a.involute()
    yb = b + b.involute()
    zc = c - c.involute()
    zd = a * b - (a * b).involute()
    sigma = {1: ya, 2: yb, -1: zc, -2: zd}
    assert f.substitute(sigma).involute() == f.involute().substitute(sigma)
