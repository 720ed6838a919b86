"""Bounded generation of T(*)-space and T(*)-ideal consequences.

A consequence of ``f`` substitutes a symmetric polynomial for each y and a
skew polynomial for each z. Substituted values are combinations of at most
``max_support`` candidates ``m + m*`` (symmetric, plus the unit) or
``m - m*`` (skew) with ``m`` a word of length ``<= max_subst_degree``.

With ``coefficient_set="all"`` the coefficients are handled formally:
substituting ``x -> sum_s c_{x,s} s`` and collecting by the monomial in the
``c``'s gives pieces whose span is the span of all instances. Over F_q two
coefficient monomials define the same function when their exponents agree
after reduction modulo ``x^q = x``, so pieces are merged accordingly; in the
generic regimes every piece is kept. ``"unit_pairs"`` instead builds the
span of the concrete instances with coefficients +-1 (and, in the generic
regimes, of their multihomogeneous components), computed from the same
pieces grouped by exponent parity.

Instances are admitted when a degree estimate (the largest total degree any
term can reach) is at most ``bound``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundTooSmall, ModeFieldMismatch
from .freealg import MultiDegree, StarPolynomial, involute_word, letter_key, word_key, words_up_to
from .linalg import SpanBasis, rref


@dataclass(frozen=True)
class ConsequenceStrategy:
    max_subst_degree: int = 2
    max_support: int = 2
    coefficient_set: str = "all"  # "all" | "unit_pairs"

    def __post_init__(self):
        if self.max_subst_degree < 1 or self.max_support < 1:
            raise ValueError("strategy parameters must be positive")
        if self.coefficient_set not in ("all", "unit_pairs"):
            raise ValueError(f"unknown coefficient set {self.coefficient_set!r}")

    @classmethod
    def default_for(cls, field):
        return cls() if field.is_finite else cls(coefficient_set="unit_pairs")

    def validate(self, field):
        if self.coefficient_set == "all" and not field.is_finite:
            raise ModeFieldMismatch("the 'all' coefficient set needs a finite coefficient field")


# candidates ---------------------------------------------------------------


def _normalise(field, terms):
    """Scale so the graded-lex smallest word has coefficient 1."""
    lead = min(terms, key=word_key)
    inv = field.inv(terms[lead])
    return tuple(sorted((w, field.mul(inv, c)) for w, c in terms.items()))


@lru_cache(maxsize=None)
def candidates(letters, max_degree, field, symmetric):
    """Distinct (up to scalar) sym or skew candidates as ``(terms, degree)``;
    ``terms`` is a tuple of ``(word, coefficient)``."""
    F = field
    seen = {}
    if symmetric:
        seen[(((), F.one),)] = 0
    for w in words_up_to(letters, max_degree):
        if not w:
            continue
        rw, sign = involute_word(w)
        if not symmetric:
            sign = -sign
        terms = {w: F.one}
        c = F.one if sign > 0 else F.neg(F.one)
        terms[rw] = F.add(terms.get(rw, F.zero), c)
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            continue
        key = _normalise(F, terms)
        seen.setdefault(key, len(w))
    return tuple(seen.items())


def _options(cands, max_support):
    """Supports grouped by their maximal candidate degree."""
    by_level = {}
    idx = range(len(cands))
    for size in range(1, max_support + 1):
        for combo in itertools.combinations(idx, size):
            level = max(cands[i][1] for i in combo)
            by_level.setdefault(level, []).append(combo)
    return by_level


# expansion ----------------------------------------------------------------


def _product(F, seq, cands, cache):
    """Terms of the product of the candidates in ``seq`` (prefix cached)."""
    hit = cache.get(seq)
    if hit is not None:
        return hit
    if not seq:
        res = {(): F.one}
    else:
        left = _product(F, seq[:-1], cands, cache)
        sym, j = seq[-1]
        res = {}
        for w1, c1 in left.items():
            for w2, c2 in cands[sym][j]:
                w = w1 + w2
                res[w] = F.add(res.get(w, F.zero), F.mul(c1, c2))
        res = {w: c for w, c in res.items() if c}
    cache[seq] = res
    return res


def _expand(f, support, cands, cache):
    """Pieces of ``f`` under ``x -> sum c_{x,s} s`` for the chosen supports.

    ``support`` maps letters to tuples of candidate indices. Returns
    ``{alpha: terms}`` with ``alpha`` the exponent tuple over the flattened
    (letter, candidate) slots.
    """
    F = f.field
    slots = [(x, j) for x in sorted(support, key=letter_key) for j in support[x]]
    slot_index = {s: i for i, s in enumerate(slots)}
    n = len(slots)
    pieces = {}
    for w, c in f.terms.items():
        if any(not support.get(a) for a in w):
            continue
        for choice in itertools.product(*(support[a] for a in w)):
            alpha = [0] * n
            for a, j in zip(w, choice):
                alpha[slot_index[(a, j)]] += 1
            prod = _product(F, tuple((a > 0, j) for a, j in zip(w, choice)), cands, cache)
            acc = pieces.setdefault(tuple(alpha), {})
            for w2, c2 in prod.items():
                acc[w2] = F.add(acc.get(w2, F.zero), F.mul(c, c2))
    return pieces, n


def _reduce_exp(e, q):
    return 0 if e == 0 else (e - 1) % (q - 1) + 1


def _term_profiles(f):
    out = []
    for w in f.terms:
        counts = {}
        for a in w:
            counts[a] = counts.get(a, 0) + 1
        out.append(counts)
    return out


def _estimate(profiles, levels):
    """Largest degree a surviving term can reach and the letters those
    terms use; -1 when every term is killed by a zero substitution."""
    best = -1
    used = set()
    for counts in profiles:
        if any(levels.get(a) is None for a in counts):
            continue
        used.update(counts)
        best = max(best, sum(d * levels[a] for a, d in counts.items()))
    return best, used


def _vanishing_unit_sets(f, regime):
    """Sets U of y-variables such that sending each x in U to a scalar
    multiple of 1 kills every piece of ``f``."""
    F = f.field
    ys = [a for a in f.letters() if a > 0]
    q = F.q
    out = set()
    for r in range(1, len(ys) + 1):
        for U in itertools.combinations(ys, r):
            pos = {x: i for i, x in enumerate(U)}
            acc = {}
            for w, c in f.terms.items():
                exps = [0] * len(U)
                rest = []
                for a in w:
                    if a in pos:
                        exps[pos[a]] += 1
                    else:
                        rest.append(a)
                if regime == "finite":
                    exps = [_reduce_exp(e, q) for e in exps]
                key = (tuple(exps), tuple(rest))
                acc[key] = F.add(acc.get(key, F.zero), c)
            if not any(acc.values()):
                out.add(frozenset(U))
    return out


def _instances(f, letters, strategy, bound, regime):
    """Yield consequence rows (dicts word -> coefficient) of ``f`` whose
    substituted values use words over ``letters``."""
    F = f.field
    letters = tuple(sorted(letters, key=letter_key))
    cands = {True: candidates(letters, strategy.max_subst_degree, F, True),
             False: candidates(letters, strategy.max_subst_degree, F, False)}
    cand_terms = {k: [c for c, _ in v] for k, v in cands.items()}
    cache = {}
    vanishing = _vanishing_unit_sets(f, regime)
    opts = {k: _options(v, strategy.max_support) for k, v in cands.items()}
    xs = sorted(f.letters(), key=letter_key)
    profiles = _term_profiles(f)
    level_choices = [[None] + sorted(opts[x > 0]) for x in xs]
    q = F.q
    for levels in itertools.product(*level_choices):
        lv = dict(zip(xs, levels))
        est, used = _estimate(profiles, lv)
        if est < 0 or est > bound:
            continue
        if any(lvl is not None and x not in used for x, lvl in lv.items()):
            continue  # same instances as with that variable sent to zero
        units = frozenset(x for x, lvl in lv.items() if lvl == 0)
        if units and any(U <= units for U in vanishing):
            continue
        per_var = [[()] if lvl is None else opts[x > 0][lvl] for x, lvl in zip(xs, levels)]
        for combo in itertools.product(*per_var):
            support = {x: s for x, s in zip(xs, combo)}
            if strategy.coefficient_set == "unit_pairs":
                yield from _unit_pair_rows(f, support, cand_terms, cache, regime)
                continue
            pieces, _ = _expand(f, support, cand_terms, cache)
            grouped = {}
            for alpha, terms in pieces.items():
                if any(e == 0 for e in alpha):
                    continue  # produced again by a smaller support
                key = tuple(_reduce_exp(e, q) for e in alpha) if regime == "finite" else alpha
                acc = grouped.setdefault(key, {})
                for w, c in terms.items():
                    acc[w] = F.add(acc.get(w, F.zero), c)
            for terms in grouped.values():
                row = {w: c for w, c in terms.items() if c}
                if row:
                    yield row


def _unit_pair_rows(f, support, cand_terms, cache, regime):
    """Rows spanning the +-1 instances on ``support``.

    The instance for signs ``sigma`` is ``sum_alpha sigma^alpha v_alpha``, and
    ``sigma^alpha`` only sees ``alpha mod 2``. Characters of (Z/2)^n are
    linearly independent away from characteristic 2, so the instances span
    exactly the parity sums ``sum_{alpha = pi mod 2} v_alpha``. In the generic
    regimes the instances are also split into multihomogeneous components;
    every ``v_alpha`` is multihomogeneous, so the sums are taken per
    (multidegree, parity) instead.
    """
    F = f.field
    pieces, _ = _expand(f, support, cand_terms, cache)
    grouped = {}
    for alpha, terms in pieces.items():
        terms = {w: c for w, c in terms.items() if c}
        if not terms:
            continue
        parity = tuple(e % 2 for e in alpha)
        key = (MultiDegree.of_word(next(iter(terms))), parity) if regime != "finite" else parity
        acc = grouped.setdefault(key, {})
        for w, c in terms.items():
            acc[w] = F.add(acc.get(w, F.zero), c)
    for terms in grouped.values():
        row = {w: c for w, c in terms.items() if c}
        if row:
            yield row


# public API ---------------------------------------------------------------


def _regime(field, mode):
    if mode is None:
        return "finite" if field.is_finite else "generic"
    if mode.field is not field:
        raise ModeFieldMismatch(f"{field.name} generators under mode {mode.name}")
    return "generic" if mode.is_generic else "finite"


def wrapped_family(S):
    """S, S* and the four wrappings of each member with fresh variables."""
    out = []
    seen = set()

    def push(g):
        if g.is_zero():
            return
        key = _normalise(g.field, g.terms)
        if key not in seen:
            seen.add(key)
            out.append(g)

    base = []
    for f in S:
        base += [f, f.involute()]
    for f in base:
        push(f)
    for f in base:
        ys = [a for a in f.letters() if a > 0]
        zs = [-a for a in f.letters() if a < 0]
        n, m = max(ys, default=0), max(zs, default=0)
        F = f.field
        y1, y2 = StarPolynomial.word(F, (n + 1,)), StarPolynomial.word(F, (n + 2,))
        z1, z2 = StarPolynomial.word(F, (-(m + 1),)), StarPolynomial.word(F, (-(m + 2),))
        for left, right in ((y1, y2), (y1, z1), (z1, y1), (z1, z2)):
            push(left * f * right)
    return out


def _rows_for(gens, letters, strategy, bound, regime):
    rows = []
    for g in gens:
        rows.extend(_instances(g, letters, strategy, bound, regime))
    return rows


def _span(field, rows, universe=None):
    if universe is None:
        universe = sorted({w for r in rows for w in r}, key=word_key)
    index = {w: i for i, w in enumerate(universe)}
    vecs = []
    for r in rows:
        v = [field.zero] * len(universe)
        for w, c in r.items():
            v[index[w]] = c
        vecs.append(v)
    return SpanBasis(field, universe, vecs)


def _default_letters(bound):
    k = max(bound, 1)
    return tuple(range(1, k + 1)) + tuple(-i for i in range(1, k + 1))


def t_space_consequences_in_bound(W, bound, strategy=None, mode=None, letters=None):
    """Span of the bounded consequences of ``W`` (as a T(*)-space).

    Substituted values use words over ``letters`` (default: y1..y_b and
    z1..z_b with b = bound).
    """
    W = list(W)
    if not W:
        raise ValueError("empty generator list")
    field = W[0].field
    if bound < max(f.degree() for f in W):
        raise BoundTooSmall(f"bound {bound} is below the generator degree")
    strategy = strategy or ConsequenceStrategy.default_for(field)
    strategy.validate(field)
    regime = _regime(field, mode)
    letters = tuple(letters) if letters is not None else _default_letters(bound)
    return _span(field, _rows_for(W, letters, strategy, bound, regime))


def t_ideal_consequences_in_bound(S, bound, strategy=None, mode=None, letters=None):
    """Span of the bounded consequences of ``S`` as a T(*)-ideal, generated as
    the T(*)-space of S, S* and their wrappings by fresh variables."""
    S = list(S)
    if not S:
        raise ValueError("empty generator list")
    if bound < max(f.degree() for f in S):
        raise BoundTooSmall(f"bound {bound} is below the generator degree")
    field = S[0].field
    strategy = strategy or ConsequenceStrategy.default_for(field)
    strategy.validate(field)
    regime = _regime(field, mode)
    letters = tuple(letters) if letters is not None else _default_letters(bound)
    return _span(field, _rows_for(wrapped_family(S), letters, strategy, bound, regime))


def _class_key(counts, letters, q, regime):
    if regime == "finite":
        return tuple(counts.get(a, 0) % (q - 1) for a in letters)
    return tuple(counts.get(a, 0) for a in letters)


class SliceConsequences:
    """Consequence rows for one letter set, grouped so that each slice can
    be intersected with the relevant rows only.

    Over F_q the span is graded by the per-variable degree modulo ``q - 1``
    (scaling a variable by a nonzero constant is an endomorphism), so only
    rows in the slice's class can contribute; in the generic regimes rows
    are multihomogeneous already.
    """

    def __init__(self, field, letters, rows, regime):
        self.field = field
        self.letters = tuple(sorted(letters, key=letter_key))
        self.regime = regime
        self.groups = {}
        q = field.q
        for r in rows:
            counts = MultiDegree.of_word(next(iter(r))).letter_counts()
            key = _class_key(counts, self.letters, q, regime)
            self.groups.setdefault(key, []).append(r)

    def in_slice(self, sl):
        counts = sl.multidegree.letter_counts()
        key = _class_key(counts, self.letters, self.field.q, self.regime)
        rows = self.groups.get(key, [])
        if not rows:
            return SpanBasis(self.field, sl.words)
        span = _span(self.field, rows)
        return span.restricted(list(sl.words))


def slice_consequences(space_gens, ideal_gens, letters, bound, strategy, mode):
    """Rows of the T(*)-space of ``space_gens`` plus the T(*)-ideal of
    ``ideal_gens`` over ``letters``; no degree precondition, so generators
    of degree above ``bound`` simply contribute their low-degree instances."""
    gens = list(space_gens) + wrapped_family(list(ideal_gens))
    field = gens[0].field
    strategy.validate(field)
    regime = _regime(field, mode)
    rows = _rows_for(gens, letters, strategy, bound, regime)
    return SliceConsequences(field, letters, rows, regime)
