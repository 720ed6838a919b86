"""Sparse commutative multivariate polynomials over a field.

These are the entries of generic matrices: a symmetric or skew variable of the
free algebra is sent to a matrix whose coordinates are fresh indeterminates
``a_k``, ``b_k`` and ``c_k`` (:class:`CommVar`), so a star-polynomial is an
identity over an infinite field exactly when every entry of its generic
evaluation is the zero polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DescriptorMismatch, MissingAssignment
from .field import FieldElement

ROLES = ("a", "b", "c")  # DiagA, CornerB, SkewC


@dataclass(frozen=True, order=True)
class CommVar:
    role: str
    index: int

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}")
        if self.index < 1:
            raise ValueError("index must be >= 1")

    @property
    def key(self):
        # ids sort by role first, then index
        return ROLES.index(self.role) * 1_000_000 + self.index

    @classmethod
    def from_key(cls, key):
        role, index = divmod(key, 1_000_000)
        return cls(ROLES[role], index)

    def __str__(self):
        return f"{self.role}{self.index}"


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _mono_str(mono):
    parts = []
    for v, e in mono:
        name = str(CommVar.from_key(v))
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class CommPolynomial:
    """Immutable sparse polynomial; monomials are sorted ``(var_key, exp)`` tuples."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, field, c=1):
        return cls(field, {(): field.coerce(c)})

    @classmethod
    def var(cls, field, v: CommVar):
        return cls._raw(field, {((v.key, 1),): field.one})

    def _lift(self, other):
        if isinstance(other, CommPolynomial):
            if other.field is not self.field:
                raise DescriptorMismatch(f"{self.field.name} vs {other.field.name}")
            return other
        if isinstance(other, (int, FieldElement)) or hasattr(other, "numerator"):
            return CommPolynomial.constant(self.field, other)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(terms.get(m, F.zero), c)
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return CommPolynomial._raw(F, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return CommPolynomial._raw(F, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        if not self.terms or not other.terms:
            return CommPolynomial._raw(F, {})
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = F.add(terms.get(m, F.zero), F.mul(c1, c2))
        return CommPolynomial._raw(F, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = CommPolynomial.constant(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CommPolynomial):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == CommPolynomial.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.name, frozenset(self.terms.items())))

    def variables(self):
        return sorted({CommVar.from_key(v) for m in self.terms for v, _ in m})

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def reduce_exponents(self, q):
        """Representative modulo ``x^q - x`` for every variable: the unique
        polynomial with exponents below ``q`` defining the same function on
        ``F_q``. It is zero exactly when the polynomial vanishes on every
        point of ``F_q^n``."""
        F = self.field
        terms = {}
        for m, c in self.terms.items():
            red = tuple((v, (e - 1) % (q - 1) + 1) for v, e in m)
            terms[red] = F.add(terms.get(red, F.zero), c)
        return CommPolynomial._raw(F, {m: c for m, c in terms.items() if c})

    def eval_at(self, point):
        """Evaluate at ``point``: mapping CommVar -> FieldElement (or int)."""
        F = self.field
        raw = {}
        for v, val in point.items():
            raw[v.key if isinstance(v, CommVar) else v] = F.coerce(val)
        total = F.zero
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                if v not in raw:
                    raise MissingAssignment(CommVar.from_key(v))
                term = F.mul(term, F.pow(raw[v], e))
            total = F.add(total, term)
        return FieldElement(F, total)

    def eval_batch(self, arrays):
        """Vectorised evaluation over a finite field: ``arrays`` maps var keys
        to equally shaped int arrays of raw values."""
        F = self.field
        shape = next(iter(arrays.values())).shape if arrays else ()
        total = np.zeros(shape, dtype=np.int64)
        powers = {}
        for m, c in self.terms.items():
            term = np.full(shape, c, dtype=np.int64)
            for v, e in m:
                if v not in arrays:
                    raise MissingAssignment(CommVar.from_key(v))
                key = (v, e)
                if key not in powers:
                    acc = np.full(shape, F.one, dtype=np.int64)
                    for _ in range(e):
                        acc = F.vmul(acc, arrays[v])
                    powers[key] = acc
                term = F.vmul(term, powers[key])
            total = F.vadd(total, term)
        return total

    def __repr__(self):
        return f"CommPolynomial({self}, {self.field.name})"

    def __str__(self):
        F = self.field
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[m]
            neg = F.is_negative(c)
            mag = F.neg(c) if neg else c
            if m:
                body = _mono_str(m) if mag == F.one else f"{F.format(mag)}*{_mono_str(m)}"
            else:
                body = F.format(mag)
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)
