"""Exact row reduction over the supported fields and the span carrier.

Rows are plain lists of raw field values (``Fraction`` over Q, ints over the
finite fields). Prime fields with tall systems go through a vectorised numpy
elimination mod p; everything else uses the straightforward Python loop.
"""
from __future__ import annotations

import numpy as np

from .errors import UniverseMismatch
from .freealg import StarPolynomial, word_key


def rref(field, rows, ncols):
    """Reduced row echelon form of ``rows``; returns ``(rows, pivots)``.

    Pivots are chosen in column order, so earlier columns are eliminated
    first. Zero rows are dropped.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [], []
    if field.is_prime_field and len(rows) > 2 * ncols:
        return _rref_mod_p(np.array(rows, dtype=np.int64), field.p)
    F = field
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        pr = [F.mul(inv, v) if v else v for v in rows[r]]
        rows[r] = pr
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                ri = rows[i]
                rows[i] = [F.sub(a, F.mul(c, b)) if b else a for a, b in zip(ri, pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rref_mod_p(m, p):
    m = m % p
    nrows, ncols = m.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, col]), p - 2, p)) % p
        factors = m[:, col].copy()
        factors[r] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(factors[hit], m[r])) % p
        pivots.append(col)
        r += 1
    return [list(map(int, row)) for row in m[:r]], pivots


def nullspace(field, rows, ncols):
    """Basis of ``{x : row . x = 0 for every row}`` (one vector per free column)."""
    red, pivots = rref(field, rows, ncols)
    F = field
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def rank(field, rows, ncols):
    return len(rref(field, rows, ncols)[1])


class SpanBasis:
    """A subspace of the span of ``universe`` (a list of words), kept as the
    reduced row echelon form of its spanning vectors."""

    def __init__(self, field, universe, vectors=()):
        self.field = field
        self.universe = list(universe)
        self.index = {w: i for i, w in enumerate(self.universe)}
        self.rows, self.pivots = rref(field, vectors, len(self.universe))

    @classmethod
    def from_polynomials(cls, field, polys, universe=None):
        polys = list(polys)
        if universe is None:
            universe = sorted({w for f in polys for w in f.terms}, key=word_key)
        basis = cls(field, universe)
        return basis.extended(basis.vector(f) for f in polys)

    @property
    def dim(self):
        return len(self.rows)

    def __len__(self):
        return self.dim

    def vector(self, f: StarPolynomial):
        v = [self.field.zero] * len(self.universe)
        for w, c in f.terms.items():
            i = self.index.get(w)
            if i is None:
                raise UniverseMismatch(f"word {w} lies outside the basis universe")
            v[i] = c
        return v

    def polynomial(self, vector):
        return StarPolynomial(self.field, {w: c for w, c in zip(self.universe, vector) if c})

    def polynomials(self):
        return [self.polynomial(r) for r in self.rows]

    def extended(self, vectors):
        out = SpanBasis(self.field, self.universe)
        out.rows, out.pivots = rref(self.field, list(self.rows) + list(vectors), len(self.universe))
        return out

    def __add__(self, other):
        if other.universe != self.universe:
            raise UniverseMismatch("spans over different universes")
        return self.extended(other.rows)

    def coordinates(self, f):
        """Coordinates of ``f`` with respect to ``self.rows`` or ``None`` when
        ``f`` is not in the span."""
        v = self.vector(f) if isinstance(f, StarPolynomial) else list(f)
        F = self.field
        coords = []
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            coords.append(c)
            if c:
                v = [F.sub(a, F.mul(c, b)) if b else a for a, b in zip(v, row)]
        if any(v):
            return None
        return coords

    def contains(self, f):
        return self.coordinates(f) is not None

    def __contains__(self, f):
        return self.contains(f)

    def contains_span(self, other):
        return all(self.coordinates(r) is not None for r in other.rows)

    def restricted(self, universe):
        """Intersection with the span of the words in ``universe``."""
        keep = set(universe)
        outside = [i for i, w in enumerate(self.universe) if w not in keep]
        inside = [self.index[w] for w in universe if w in self.index]
        order = outside + inside
        permuted = [[row[i] for i in order] for row in self.rows]
        red, pivots = rref(self.field, permuted, len(order))
        n_out = len(outside)
        vectors = []
        for row, pc in zip(red, pivots):
            if pc >= n_out:
                vectors.append(row[n_out:])
        # words of ``universe`` absent from self.universe carry zero coordinates
        out = SpanBasis(self.field, universe)
        pos = {w: j for j, w in enumerate(universe)}
        full = []
        for vec in vectors:
            v = [self.field.zero] * len(universe)
            for k, i in enumerate(inside):
                v[pos[self.universe[i]]] = vec[k]
            full.append(v)
        out.rows, out.pivots = rref(self.field, full, len(universe))
        return out

    def __repr__(self):
        return f"SpanBasis(dim={self.dim}, universe={len(self.universe)} words, field={self.field.name})"
