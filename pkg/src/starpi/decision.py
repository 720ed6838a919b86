"""Identity and centrality tests, slice spaces and verification reports.

Three evaluation regimes are supported (:class:`EvalMode`):

* ``FiniteExhaustive(F_q)``: every sym/skew-respecting assignment over F_q;
* ``GenericChar0``: generic matrices over Q (any infinite field of char 0);
* ``GenericCharP(p)``: generic matrices over F_p, modelling an infinite field
  of characteristic p.

In the generic regimes a polynomial is an identity exactly when the entries
of its generic evaluation are zero polynomials. Over F_q the entries are
first reduced modulo ``x^q - x``, which makes zero-testing of the reduced
entries equivalent to vanishing at every point; the point-by-point route is
kept as an independent cross-check.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .commpoly import CommPolynomial
from .errors import BasisNotComplementary, InfiniteField, ModeFieldMismatch, UniverseMismatch
from .field import Field, get_field
from .freealg import MultiDegree, StarPolynomial, words_of_multidegree
from .linalg import SpanBasis, nullspace, rref
from .ut2 import (InvolutionKind, UT2Matrix, assignment_count, assignment_from_point, batch_evaluate,
                  batch_word_values, evaluate, generic_assignment, point_grid)

CHUNK = 1 << 16


# modes --------------------------------------------------------------------


@dataclass(frozen=True)
class EvalMode:
    kind: str  # "exhaustive" | "char0" | "charp"
    field: Field

    @classmethod
    def finite_exhaustive(cls, field):
        field = get_field(field) if not isinstance(field, Field) else field
        if not field.is_finite:
            raise InfiniteField("FiniteExhaustive needs a finite field")
        return cls("exhaustive", field)

    @classmethod
    def generic_char0(cls):
        return cls("char0", Field.rational())

    @classmethod
    def generic_char_p(cls, p):
        if p == 2 or not get_field(f"F{p}").is_prime_field:
            raise ModeFieldMismatch(f"GenericCharP needs an odd prime, got {p}")
        return cls("charp", get_field(f"F{p}"))

    @classmethod
    def default_for(cls, field):
        """Exhaustive over finite fields, generic over Q."""
        field = get_field(field) if not isinstance(field, Field) else field
        return cls.finite_exhaustive(field) if field.is_finite else cls.generic_char0()

    @property
    def is_generic(self):
        return self.kind != "exhaustive"

    @property
    def name(self):
        if self.kind == "exhaustive":
            return f"FiniteExhaustive({self.field.name})"
        if self.kind == "char0":
            return "GenericChar0"
        return f"GenericCharP({self.field.p})"

    def check(self, f):
        if f.field is not self.field:
            raise ModeFieldMismatch(f"{f.field.name} polynomial under mode {self.name}")

    def __str__(self):
        return self.name


def _as_mode(mode, field=None):
    if isinstance(mode, EvalMode):
        return mode
    if mode is None:
        return EvalMode.default_for(field)
    raise ModeFieldMismatch(f"unknown mode {mode!r}")


# verdicts -----------------------------------------------------------------


@dataclass
class Verdict:
    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


def _generic_entries(f, kind, mode):
    value = evaluate(f, generic_assignment(f.letters(), kind, f.field))
    return value


def _fails(prop, e11, e12, e22, field):
    if prop == "identity":
        return (e11 != 0) | (e12 != 0) | (e22 != 0)
    return (e12 != 0) | (e11 != e22)


def _decide(f, kind, mode, prop):
    kind = InvolutionKind.parse(kind)
    mode = _as_mode(mode, f.field)
    mode.check(f)
    if mode.is_generic:
        m = _generic_entries(f, kind, mode)
        ok = m.is_zero() if prop == "identity" else (m.e12.is_zero() and m.e11 == m.e22)
        if ok:
            return Verdict(True)
        return Verdict(False, {"kind": "generic", "value": str(m)})
    F = mode.field
    letters = f.letters()
    total = assignment_count(letters, kind, F)
    for start in range(0, total, CHUNK):
        grid = point_grid(letters, kind, F, start, start + CHUNK)
        vals = batch_evaluate(f, kind, grid) if grid else _constant_values(f)
        bad = np.nonzero(_fails(prop, *vals, F))[0]
        if bad.size:
            idx = start + int(bad[0])
            point = [int(grid[k][idx - start]) for k in grid] if grid else []
            a = assignment_from_point(letters, kind, F, point)
            value = evaluate(f, a)
            return Verdict(False, {"kind": "assignment", "index": idx,
                                   "assignment": a.to_json(), "value": str(value)})
    return Verdict(True)


def _constant_values(f):
    F = f.field
    c = f.terms.get((), F.zero)
    return tuple(np.array([v], dtype=np.int64) for v in (c, 0, c))


def is_identity(f, kind, mode=None) -> Verdict:
    """Does ``f`` vanish under every sym/skew-respecting evaluation in UT2?"""
    return _decide(f, kind, mode, "identity")


def is_central_poly(f, kind, mode=None) -> Verdict:
    """Is every evaluation of ``f`` a scalar matrix?"""
    return _decide(f, kind, mode, "central")


def equal_mod_identities(f, g, kind, mode=None) -> Verdict:
    return is_identity(f - g, kind, mode)


# slices -------------------------------------------------------------------


@dataclass(frozen=True)
class Slice:
    multidegree: MultiDegree
    words: tuple

    @classmethod
    def of(cls, multidegree):
        return cls(multidegree, tuple(words_of_multidegree(multidegree)))

    @classmethod
    def from_maps(cls, deg_y=None, deg_z=None):
        return cls.of(MultiDegree.from_maps(deg_y, deg_z))

    @property
    def dim(self):
        return len(self.words)

    @property
    def total(self):
        return self.multidegree.total

    @property
    def id(self):
        return str(self.multidegree)

    def letters(self):
        return self.multidegree.letters()

    def __str__(self):
        return self.id


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def slices_up_to(max_degree):
    """Canonical slices of total degree <= ``max_degree``: variables are
    y1..yn and z1..zm with every degree positive, so each multidegree is
    counted once up to renaming. Includes the constants slice."""
    out = []
    for d in range(max_degree + 1):
        for a in range(d + 1):
            for cy in _compositions(a):
                for cz in _compositions(d - a):
                    md = MultiDegree.from_maps(dict(enumerate(cy, 1)), dict(enumerate(cz, 1)))
                    out.append(Slice.of(md))
    return out


# slice spaces -------------------------------------------------------------


@lru_cache(maxsize=None)
def _generic_word_values(words, kind, field):
    """Generic evaluations of each word (prefix-shared)."""
    letters = sorted({a for w in words for a in w})
    asg = generic_assignment(letters, kind, field)
    one = CommPolynomial.constant(field, 1)
    ident = UT2Matrix.identity(one)
    cache = {(): ident}
    out = []
    for w in words:
        for i in range(1, len(w) + 1):
            if w[:i] not in cache:
                cache[w[:i]] = cache[w[:i - 1]] * asg.matrix(w[i - 1])
        out.append(cache[w])
    return out


def _condition_polys(m, prop):
    if prop == "identity":
        return [m.e11, m.e12, m.e22]
    return [m.e12, m.e11 - m.e22]


def _constraints_functions(words, kind, mode, prop):
    """Linear conditions on slice coordinates: one per (entry, monomial)."""
    F = mode.field
    values = _generic_word_values(tuple(words), kind, F)
    rows = {}
    for j, m in enumerate(values):
        for e, poly in enumerate(_condition_polys(m, prop)):
            if mode.kind == "exhaustive":
                poly = poly.reduce_exponents(F.q)
            for mono, c in poly.terms.items():
                row = rows.get((e, mono))
                if row is None:
                    row = rows[(e, mono)] = [F.zero] * len(words)
                row[j] = F.add(row[j], c)
    return [r for r in rows.values() if any(r)]


def _space_points(words, kind, F, prop):
    """Same space via one condition per enumerated assignment (finite only),
    eliminated chunk by chunk."""
    letters = sorted({a for w in words for a in w})
    n = len(words)
    total = assignment_count(letters, kind, F)
    basis_rows = []
    for start in range(0, total, CHUNK):
        grid = point_grid(letters, kind, F, start, start + CHUNK)
        cols = [None] * n
        pos = {w: j for j, w in enumerate(words)}
        for w, vals in batch_word_values(list(words), kind, F, grid):
            if prop == "identity":
                cols[pos[w]] = np.concatenate(vals)
            else:
                cols[pos[w]] = np.concatenate([vals[1], F.vsub(vals[0], vals[2])])
        mat = np.stack(cols, axis=1)
        mat = mat[np.any(mat != 0, axis=1)]
        if F.is_prime_field:
            rows = mat.tolist()
        else:
            rows = np.unique(mat, axis=0).tolist()
        basis_rows, _ = rref(F, basis_rows + rows, n)
        if len(basis_rows) == n:
            break
    return basis_rows


def _slice_space(sl, kind, mode, prop, route):
    kind = InvolutionKind.parse(kind)
    words = list(sl.words)
    F = mode.field
    if not words:
        return SpanBasis(F, words)
    if route == "points":
        if mode.is_generic:
            raise ModeFieldMismatch("the points route needs FiniteExhaustive")
        cons = _space_points(tuple(words), kind, F, prop)
    else:
        cons = _constraints_functions(words, kind, mode, prop)
    return SpanBasis(F, words, nullspace(F, cons, len(words)))


def _slice_arg(sl):
    if isinstance(sl, Slice):
        return sl
    if isinstance(sl, MultiDegree):
        return Slice.of(sl)
    raise TypeError("expected a Slice or MultiDegree")


def identity_space_of_slice(sl, kind, mode, route="functions") -> SpanBasis:
    """Id(UT2, kind) intersected with the slice, exactly."""
    return _slice_space(_slice_arg(sl), kind, _as_mode(mode), "identity", route)


def central_space_of_slice(sl, kind, mode, route="functions") -> SpanBasis:
    """Central polynomials of UT2 inside the slice, exactly."""
    return _slice_space(_slice_arg(sl), kind, _as_mode(mode), "central", route)


def symmetric_space_of_slice(sl, field) -> SpanBasis:
    """The symmetric elements of the slice (f* = f), spanned by w + w*."""
    sl = _slice_arg(sl)
    polys = []
    for w in sl.words:
        m = StarPolynomial.word(field, w)
        polys.append(m + m.involute())
    return SpanBasis.from_polynomials(field, polys, list(sl.words))


# membership and quotients ---------------------------------------------------


def membership(f, basis: SpanBasis):
    """Coordinates of ``f`` in the rows of ``basis`` or ``None``."""
    if f.field is not basis.field:
        raise UniverseMismatch(f"{f.field.name} polynomial against a {basis.field.name} basis")
    return basis.coordinates(f)


def quotient_coordinates(f, basis_elements, sl, kind, mode, identity_space=None):
    """Coordinates of ``f`` modulo the identity space of ``sl`` with respect
    to ``basis_elements``; raises BasisNotComplementary when these do not
    form a basis of the quotient."""
    sl = _slice_arg(sl)
    mode = _as_mode(mode)
    F = mode.field
    ids = identity_space if identity_space is not None else identity_space_of_slice(sl, kind, mode)
    n = sl.dim
    vecs = [ids.vector(b) for b in basis_elements]
    combined, _ = rref(F, list(ids.rows) + vecs, n)
    independent = len(combined) == ids.dim + len(vecs)
    diagnostics = {"slice": sl.id, "slice_dim": n, "identity_dim": ids.dim,
                   "basis_count": len(vecs), "rank_with_basis": len(combined)}
    if not independent or len(combined) != n:
        reason = "dependent modulo identities" if not independent else "does not span the quotient"
        raise BasisNotComplementary(f"basis for {sl.id} {reason}", diagnostics)
    # solve f = sum x_i id_i + sum c_j b_j: columns are the spanning vectors
    cols = list(ids.rows) + vecs
    target = ids.vector(f)
    system = [[col[i] for col in cols] + [target[i]] for i in range(n)]
    red, pivots = rref(F, system, len(cols) + 1)
    sol = [F.zero] * len(cols)
    for row, pc in zip(red, pivots):
        sol[pc] = row[-1]
    return [F.coerce(0) if c is None else c for c in sol[ids.dim:]]


# reports ------------------------------------------------------------------


@dataclass
class Check:
    name: str
    status: str  # "pass" | "fail" | "warn"
    dims: dict | None = None
    witness: object = None

    def to_dict(self):
        out = {"name": self.name, "status": self.status}
        if self.dims is not None:
            out["dims"] = self.dims
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    theorem: str
    field: str
    mode: str
    checks: list = dc_field(default_factory=list)
    elapsed_ms: float = 0.0

    def add(self, name, ok, dims=None, witness=None, warn=False):
        status = "warn" if warn else ("pass" if ok else "fail")
        self.checks.append(Check(name, status, dims, witness))

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.checks)

    def counts(self):
        out = {"pass": 0, "fail": 0, "warn": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self, timing=True):
        out = {"theorem": self.theorem, "field": self.field, "mode": self.mode,
               "checks": [c.to_dict() for c in self.checks]}
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def to_text(self):
        lines = [f"{self.theorem} over {self.field} [{self.mode}]"]
        for c in self.checks:
            extra = ""
            if c.dims:
                extra = " " + " ".join(f"{k}={v}" for k, v in c.dims.items())
            lines.append(f"  {c.status.upper():4} {c.name}{extra}")
            if c.witness is not None and c.status == "fail":
                lines.append(f"       witness: {json.dumps(c.witness, sort_keys=True)}")
        cnt = self.counts()
        lines.append(f"  {cnt['pass']} passed, {cnt['fail']} failed, {cnt['warn']} warnings "
                     f"in {self.elapsed_ms / 1000:.2f}s")
        return "\n".join(lines)
