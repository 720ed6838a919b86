"""Upper triangular 2x2 matrices with the involutions star and s.

``star`` swaps the diagonal; ``s`` swaps the diagonal and negates the corner::

    (a c; 0 b)^star = (b  c; 0 a)
    (a c; 0 b)^s    = (b -c; 0 a)

Star-polynomials are evaluated at assignments that send every ``y_k`` to a
symmetric and every ``z_k`` to a skew matrix. Besides the scalar path
(:func:`evaluate`) there is a vectorised path over *all* assignments of a
finite field (:func:`point_grid`, :func:`batch_evaluate`), which the decision
procedures use for exhaustive checks.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .commpoly import CommPolynomial, CommVar
from .errors import InfiniteField, MissingAssignment, SymmetryViolation
from .field import Field, FieldElement
from .freealg import StarPolynomial, Variable, letter_key


class InvolutionKind(enum.Enum):
    STAR = "star"
    S = "s"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ("star", "*", "⋆"):
            return cls.STAR
        if text == "s":
            return cls.S
        raise ValueError(f"unknown involution {value!r}")


STAR, S = InvolutionKind.STAR, InvolutionKind.S


class UT2Matrix:
    """``(e11, e12; 0, e22)`` over any commutative ring whose elements support
    ``+ - *`` and equality (FieldElement, CommPolynomial)."""

    __slots__ = ("e11", "e12", "e22")

    def __init__(self, e11, e12, e22):
        self.e11, self.e12, self.e22 = e11, e12, e22

    @classmethod
    def identity(cls, one):
        zero = one - one
        return cls(one, zero, one)

    @classmethod
    def from_field(cls, field: Field, e11, e12, e22):
        return cls(field.element(e11), field.element(e12), field.element(e22))

    def __add__(self, o):
        return UT2Matrix(self.e11 + o.e11, self.e12 + o.e12, self.e22 + o.e22)

    def __sub__(self, o):
        return UT2Matrix(self.e11 - o.e11, self.e12 - o.e12, self.e22 - o.e22)

    def __neg__(self):
        return UT2Matrix(-self.e11, -self.e12, -self.e22)

    def __mul__(self, o):
        if isinstance(o, UT2Matrix):
            return UT2Matrix(self.e11 * o.e11, self.e11 * o.e12 + self.e12 * o.e22, self.e22 * o.e22)
        return UT2Matrix(self.e11 * o, self.e12 * o, self.e22 * o)

    def __rmul__(self, c):
        return UT2Matrix(c * self.e11, c * self.e12, c * self.e22)

    def __pow__(self, n):
        result = UT2Matrix.identity(self.e11 - self.e11 + 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, o):
        if not isinstance(o, UT2Matrix):
            return NotImplemented
        return self.e11 == o.e11 and self.e12 == o.e12 and self.e22 == o.e22

    __hash__ = None

    def is_zero(self):
        return not self.e11 and not self.e12 and not self.e22

    def entries(self):
        return (self.e11, self.e12, self.e22)

    def __repr__(self):
        return f"[{self.e11}, {self.e12}; 0, {self.e22}]"

    __str__ = __repr__


def e11(field):
    return UT2Matrix.from_field(field, 1, 0, 0)


def e12(field):
    return UT2Matrix.from_field(field, 0, 1, 0)


def e22(field):
    return UT2Matrix.from_field(field, 0, 0, 1)


def identity(field):
    return UT2Matrix.from_field(field, 1, 0, 1)


def involve(m: UT2Matrix, kind) -> UT2Matrix:
    kind = InvolutionKind.parse(kind)
    if kind is STAR:
        return UT2Matrix(m.e22, m.e12, m.e11)
    return UT2Matrix(m.e22, -m.e12, m.e11)


def symmetric_basis(kind, field):
    kind = InvolutionKind.parse(kind)
    if kind is STAR:
        return [identity(field), e12(field)]
    return [identity(field)]


def skew_basis(kind, field):
    kind = InvolutionKind.parse(kind)
    if kind is STAR:
        return [e11(field) - e22(field)]
    return [e11(field) - e22(field), e12(field)]


def is_central(m: UT2Matrix) -> bool:
    """Z(UT2) is the scalar matrices: zero corner and equal diagonal."""
    return not m.e12 and m.e11 == m.e22


@dataclass
class Assignment:
    """Values for the y and z variables; validated against ``kind``."""

    kind: InvolutionKind
    y_map: dict = dc_field(default_factory=dict)
    z_map: dict = dc_field(default_factory=dict)
    one: object = None  # multiplicative unit of the entry ring

    def __post_init__(self):
        self.kind = InvolutionKind.parse(self.kind)
        for k, m in self.y_map.items():
            if involve(m, self.kind) != m:
                raise SymmetryViolation(Variable("y", k), f"value of y{k} is not {self.kind.value}-symmetric")
        for k, m in self.z_map.items():
            if involve(m, self.kind) != -m:
                raise SymmetryViolation(Variable("z", k), f"value of z{k} is not {self.kind.value}-skew")
        if self.one is None:
            sample = next(iter(list(self.y_map.values()) + list(self.z_map.values())), None)
            if sample is not None:
                self.one = sample.e11 - sample.e11 + 1

    def matrix(self, letter):
        table = self.y_map if letter > 0 else self.z_map
        try:
            return table[abs(letter)]
        except KeyError:
            raise MissingAssignment(Variable.from_letter(letter)) from None

    def describe(self):
        parts = [f"y{k} = {m}" for k, m in sorted(self.y_map.items())]
        parts += [f"z{k} = {m}" for k, m in sorted(self.z_map.items())]
        return ", ".join(parts)

    def to_json(self):
        out = {}
        for k, m in sorted(self.y_map.items()):
            out[f"y{k}"] = [str(x) for x in m.entries()]
        for k, m in sorted(self.z_map.items()):
            out[f"z{k}"] = [str(x) for x in m.entries()]
        return out


def evaluate(f: StarPolynomial, assignment: Assignment) -> UT2Matrix:
    """Ring-homomorphic evaluation of ``f``; the unit word maps to the identity."""
    one = assignment.one
    if one is None:
        one = f.field.element(1)
    ident = UT2Matrix.identity(one)
    zero = one - one
    total = UT2Matrix(zero, zero, zero)
    cache = {(): ident}
    for w in sorted(f.terms, key=len):
        prod = cache.get(w)
        if prod is None:
            prod = cache.get(w[:-1])
            if prod is None:
                prod = ident
                for a in w[:-1]:
                    prod = prod * assignment.matrix(a)
            prod = prod * assignment.matrix(w[-1])
            cache[w] = prod
        total = total + prod * FieldElement(f.field, f.terms[w]) if not isinstance(one, CommPolynomial) \
            else total + prod * CommPolynomial.constant(f.field, FieldElement(f.field, f.terms[w]))
    return total


# coordinates ------------------------------------------------------------


def coordinate_roles(letter, kind):
    """CommVar roles that parametrise the value of ``letter`` under ``kind``."""
    kind = InvolutionKind.parse(kind)
    if letter > 0:
        return ("a", "b") if kind is STAR else ("a",)
    return ("c",) if kind is STAR else ("b", "c")


def coordinates(letters, kind):
    """Ordered CommVars for the given letters (y's first, smaller index first)."""
    out = []
    for a in sorted(set(letters), key=letter_key):
        out.extend(CommVar(role, abs(a)) for role in coordinate_roles(a, kind))
    return out


def _matrix_from_coords(letter, kind, coord):
    """Entries (e11, e12, e22) of a sym/skew value given its coordinates;
    ``coord`` maps roles to ring elements."""
    kind = InvolutionKind.parse(kind)
    if letter > 0:
        if kind is STAR:
            return coord["a"], coord["b"], coord["a"]
        return coord["a"], coord["a"] - coord["a"], coord["a"]
    if kind is STAR:
        return coord["c"], coord["c"] - coord["c"], -coord["c"]
    return coord["b"], coord["c"], -coord["b"]


def generic_assignment(f_or_letters, kind, field=None) -> Assignment:
    """Assignment of generic sym/skew matrices with CommPolynomial entries
    to every variable of ``f`` (or of an explicit letter list)."""
    kind = InvolutionKind.parse(kind)
    if isinstance(f_or_letters, StarPolynomial):
        letters, field = f_or_letters.letters(), f_or_letters.field
    else:
        letters = list(f_or_letters)
    y_map, z_map = {}, {}
    for a in letters:
        coord = {v.role: CommPolynomial.var(field, v) for v in coordinates([a], kind)}
        entries = _matrix_from_coords(a, kind, coord)
        (y_map if a > 0 else z_map)[abs(a)] = UT2Matrix(*entries)
    return Assignment(kind, y_map, z_map, one=CommPolynomial.constant(field, 1))


def assignment_from_point(letters, kind, field, values):
    """Concrete assignment from raw coordinate values ordered as :func:`coordinates`."""
    kind = InvolutionKind.parse(kind)
    values = iter(values)
    y_map, z_map = {}, {}
    for a in sorted(set(letters), key=letter_key):
        coord = {role: field.element(next(values)) for role in coordinate_roles(a, kind)}
        entries = _matrix_from_coords(a, kind, coord)
        (y_map if a > 0 else z_map)[abs(a)] = UT2Matrix(*entries)
    return Assignment(kind, y_map, z_map, one=field.element(1))


def enumerate_assignments(f_or_letters, kind, field):
    """Every sym/skew-respecting assignment over a finite field, in the
    deterministic order of :func:`point_grid`."""
    if not field.is_finite:
        raise InfiniteField("exhaustive enumeration needs a finite field")
    letters = f_or_letters.letters() if isinstance(f_or_letters, StarPolynomial) else list(f_or_letters)
    n = len(coordinates(letters, kind))
    for values in itertools.product(field.elements(), repeat=n):
        yield assignment_from_point(letters, kind, field, values)


def assignment_count(letters, kind, field):
    return field.q ** len(coordinates(letters, kind))


def power_formula(a, b, i):
    """``(a I + b e12)^i = (a^i, i a^(i-1) b; 0, a^i)`` for ``i >= 1``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    ai = a ** i
    return UT2Matrix(ai, (a ** (i - 1)) * b * i, ai)


# vectorised exhaustive evaluation ------------------------------------------


def point_grid(letters, kind, field, start=0, stop=None):
    """Coordinate arrays for assignments ``start..stop`` of the enumeration.

    Returns ``{CommVar.key: int array}``; enumeration order is the
    lexicographic order of coordinate tuples (last coordinate fastest), the
    same order as :func:`enumerate_assignments`.
    """
    coords = coordinates(letters, kind)
    q = field.q
    total = q ** len(coords)
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    elems = np.array(field.elements(), dtype=np.int64)
    out = {}
    for pos, v in enumerate(coords):
        stride = q ** (len(coords) - 1 - pos)
        out[v.key] = elems[(idx // stride) % q]
    return out


def _batch_letter(letter, kind, field, grid):
    kind = InvolutionKind.parse(kind)
    k = abs(letter)
    zeros = None
    if letter > 0:
        a = grid[CommVar("a", k).key]
        if kind is STAR:
            return a, grid[CommVar("b", k).key], a
        zeros = np.zeros_like(a)
        return a, zeros, a
    if kind is STAR:
        c = grid[CommVar("c", k).key]
        return c, np.zeros_like(c), field.vneg(c)
    b = grid[CommVar("b", k).key]
    return b, grid[CommVar("c", k).key], field.vneg(b)


def batch_word_values(words, kind, field, grid):
    """Yield ``(word, (e11, e12, e22))`` for each word over the grid's points.

    Words are visited depth first along a prefix trie so memory stays
    proportional to the word length.
    """
    n = len(next(iter(grid.values()))) if grid else 1
    letter_vals = {}
    trie = {}
    for w in words:
        node = trie
        for a in w:
            node = node.setdefault(a, {})
        node[None] = w
    one = np.full(n, field.one, dtype=np.int64)
    zero = np.zeros(n, dtype=np.int64)

    def mul(x, yv):
        return (field.vmul(x[0], yv[0]),
                field.vadd(field.vmul(x[0], yv[1]), field.vmul(x[1], yv[2])),
                field.vmul(x[2], yv[2]))

    stack = [(trie, (one, zero, one))]
    while stack:
        node, val = stack.pop()
        if None in node:
            yield node[None], val
        for a in sorted((k for k in node if k is not None), key=letter_key, reverse=True):
            if a not in letter_vals:
                letter_vals[a] = _batch_letter(a, kind, field, grid)
            stack.append((node[a], mul(val, letter_vals[a])))


def batch_evaluate(f: StarPolynomial, kind, grid):
    """Entry arrays (e11, e12, e22) of ``f`` at every point of ``grid``."""
    field = f.field
    n = len(next(iter(grid.values()))) if grid else 1
    acc = [np.zeros(n, dtype=np.int64) for _ in range(3)]
    for w, vals in batch_word_values(list(f.terms), kind, field, grid):
        c = f.terms[w]
        for i in range(3):
            acc[i] = field.vadd(acc[i], field.vscale(c, vals[i]))
    return tuple(acc)
