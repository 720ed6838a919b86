"""Exact scalar fields: the rationals, prime fields F_p and small F_{p^k}.

Arithmetic is exposed on :class:`Field` over *raw* values so that the
polynomial and matrix code can run without wrapper objects:

* ``Q``: :class:`fractions.Fraction`
* ``F_p``: ``int`` residue in ``[0, p)``
* ``F_{p^k}``: ``int`` in ``[0, q)`` encoding the coefficient vector
  ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` of ``c_0 + c_1 t + ...`` modulo the
  field's irreducible modulus. Arithmetic goes through precomputed tables.

:class:`FieldElement` wraps a raw value for user-facing code.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DescriptorMismatch, DivisionByZero, InfiniteField, UnsupportedField

# Monic irreducible moduli, coefficients low degree first.
EXTENSION_MODULI = {
    9: (3, (1, 0, 1)),  # t^2 + 1
    25: (5, (2, 0, 1)),  # t^2 + 2
    27: (3, (1, 2, 0, 1)),  # t^3 + 2t + 1
    49: (7, (1, 0, 1)),  # t^2 + 1
}

FIELD_NAMES = ("Q", "F3", "F5", "F7", "F9", "F25", "F27", "F49")


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def _polymod(num, den, p):
    """Remainder of ``num`` by monic ``den`` over F_p (coefficient lists, low first)."""
    num = list(num)
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i] % p
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    return [c % p for c in num[:d]]


def is_irreducible(modulus, p):
    """Exhaustive check that a monic polynomial over F_p has no monic factor
    of degree between 1 and half its degree."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_polymod(modulus, low + (1,), p)):
                return False
    return True


class Field:
    """Descriptor and arithmetic for one field. Obtain instances through
    :func:`get_field`, :meth:`rational`, :meth:`prime` or :meth:`extension`;
    they are cached so equal descriptors are identical objects."""

    def __init__(self, p, k=1, modulus=None):
        self.p = p  # characteristic, 0 for Q
        self.k = k
        self.modulus = modulus
        if p == 0:
            self.q = None
            self.name = "Q"
            self.zero, self.one = Fraction(0), Fraction(1)
            return
        if p == 2:
            raise UnsupportedField("characteristic 2 is not supported")
        if not _is_prime(p):
            raise UnsupportedField(f"{p} is not prime")
        self.q = p ** k
        self.name = f"F{self.q}"
        self.zero, self.one = 0, 1
        if k > 1:
            if modulus is None or len(modulus) != k + 1 or not is_irreducible(modulus, p):
                raise UnsupportedField(f"modulus {modulus} is not irreducible of degree {k} over F{p}")
            self._build_tables()

    # construction -----------------------------------------------------

    @staticmethod
    def rational():
        return _cached_field(0, 1)

    @staticmethod
    def prime(p):
        return _cached_field(p, 1)

    @staticmethod
    def extension(q):
        if q not in EXTENSION_MODULI:
            raise UnsupportedField(f"no extension field of size {q} in the moduli table")
        p, modulus = EXTENSION_MODULI[q]
        k = len(modulus) - 1
        return _cached_field(p, k, modulus)

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        vecs = [self._to_vec(v) for v in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._from_vec([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(vecs[a]):
                    for j, y in enumerate(vecs[b]):
                        prod[i + j] += x * y
                mul[a, b] = self._from_vec(_polymod(prod, self.modulus, p))
        self._add = add
        self._mul = mul
        self._neg = np.array([self._from_vec([(-x) % p for x in vecs[a]]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self._inv = inv
        # plain lists are much faster than numpy scalars in the scalar path
        self._add_l = add.tolist()
        self._mul_l = mul.tolist()
        self._neg_l = self._neg.tolist()
        self._inv_l = inv.tolist()

    def _to_vec(self, v):
        out = []
        for _ in range(self.k):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def _from_vec(self, vec):
        v = 0
        for c in reversed(vec):
            v = v * self.p + c
        return v

    # identity ---------------------------------------------------------

    def __repr__(self):
        return f"Field({self.name})"

    def __reduce__(self):
        return (get_field, (self.name,))

    @property
    def is_finite(self):
        return self.p != 0

    @property
    def characteristic(self):
        return self.p

    @property
    def cardinality(self):
        """``q`` for finite fields, ``math.inf`` for Q."""
        return self.q if self.q is not None else float("inf")

    @property
    def is_prime_field(self):
        return self.p != 0 and self.k == 1

    # raw arithmetic ---------------------------------------------------

    def from_int(self, n):
        if self.p == 0:
            return Fraction(n)
        return n % self.p

    def coerce(self, x):
        """Raw value from an int, Fraction, raw value or FieldElement of this field."""
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise DescriptorMismatch(f"element of {x.field.name} used in {self.name}")
            return x.value
        if isinstance(x, Fraction):
            if self.p == 0:
                return x
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        if isinstance(x, (int, np.integer)):
            return self.from_int(int(x))
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        if self.k > 1:
            return self._add_l[a][b]
        if self.p:
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.k > 1:
            return self._neg_l[a]
        if self.p:
            return (-a) % self.p
        return -a

    def mul(self, a, b):
        if self.k > 1:
            return self._mul_l[a][b]
        if self.p:
            return (a * b) % self.p
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self.name}")
        if self.k > 1:
            return self._inv_l[a]
        if self.p:
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.p and self.k == 1:
            return pow(a, n, self.p)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a):
        return not a

    def elements(self):
        """All raw values in residue / coefficient-vector lexicographic order."""
        if not self.is_finite:
            raise InfiniteField("Q cannot be enumerated")
        if self.k == 1:
            return list(range(self.p))
        # coefficient vectors ordered lexicographically, leading coefficient first
        return [self._from_vec(list(reversed(v))) for v in itertools.product(range(self.p), repeat=self.k)]

    def element(self, x):
        return FieldElement(self, self.coerce(x))

    def enumerate(self):
        return [FieldElement(self, v) for v in self.elements()]

    def generator(self):
        """The raw value of ``t`` for extension fields."""
        if self.k == 1:
            raise UnsupportedField(f"{self.name} has no adjoined generator")
        return self.p

    # vectorised arithmetic on numpy int arrays (finite fields only) ---

    def vadd(self, a, b):
        if self.k > 1:
            return self._add[a, b]
        return (a + b) % self.p

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vneg(self, a):
        if self.k > 1:
            return self._neg[a]
        return (-a) % self.p

    def vmul(self, a, b):
        if self.k > 1:
            return self._mul[a, b]
        return (a * b) % self.p

    def vscale(self, c, a):
        """Raw scalar ``c`` times array ``a``."""
        if self.k > 1:
            return self._mul[c, a]
        return (c * a) % self.p

    # printing ---------------------------------------------------------

    def format(self, a):
        """Text for a raw value; prime-field residues use the symmetric range."""
        if self.p == 0:
            return str(a)
        if self.k == 1 or a < self.p:
            # prime subfield: symmetric residue
            return str(a if a <= self.p // 2 else a - self.p)
        terms = []
        for i, c in reversed(list(enumerate(self._to_vec(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "(" + " + ".join(terms) + ")" if terms else "0"

    def is_negative(self, a):
        """True when ``format`` would print ``a`` with a leading minus sign."""
        if self.p == 0:
            return a < 0
        return self.p // 2 < a < self.p


@lru_cache(maxsize=None)
def _cached_field(p, k, modulus=None):
    return Field(p, k, modulus)


def get_field(name):
    """Field from its CLI spelling: ``Q``, ``F3``, ``F5``, ``F7``, ``F9``, ``F25``,
    ``F27``, ``F49`` (any odd prime ``Fp`` is accepted too)."""
    if isinstance(name, Field):
        return name
    text = str(name).strip()
    if text.upper() == "Q":
        return Field.rational()
    if text[:1].upper() == "F" and text[1:].isdigit():
        q = int(text[1:])
        if _is_prime(q):
            return Field.prime(q)
        return Field.extension(q)
    raise UnsupportedField(f"unknown field name {name!r}")


class FieldElement:
    """Immutable field element with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise DescriptorMismatch(f"{self.field.name} vs {other.field.name}")
            return other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field.coerce(other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n):
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.name, self.value))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field.name}"

    def __str__(self):
        return self.field.format(self.value)
