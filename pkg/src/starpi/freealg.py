"""The free unitary associative algebra F<Y u Z> with its involution.

Letters are encoded as nonzero ints: ``y_k`` is ``k`` and ``z_k`` is ``-k``.
A word is a tuple of letters (``()`` is the unit). A :class:`StarPolynomial`
maps words to raw coefficients of its :class:`~starpi.field.Field` and never
stores zero coefficients, so structural equality is polynomial equality.

The involution fixes every ``y_k``, negates every ``z_k`` and reverses words.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DescriptorMismatch, SymmetryViolation
from .field import Field, FieldElement

Y, Z = "y", "z"


@dataclass(frozen=True, order=True)
class Variable:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (Y, Z):
            raise ValueError(f"variable kind must be 'y' or 'z', not {self.kind!r}")
        if self.index < 1:
            raise ValueError("variable index must be >= 1")

    @property
    def letter(self):
        return self.index if self.kind == Y else -self.index

    @classmethod
    def from_letter(cls, letter):
        return cls(Y, letter) if letter > 0 else cls(Z, -letter)

    def __str__(self):
        return f"{self.kind}{self.index}"


def letter_key(letter):
    """Y letters before Z letters, smaller index first."""
    return (0, letter) if letter > 0 else (1, -letter)


def word_key(word):
    """Graded lexicographic order on words."""
    return (len(word), tuple(letter_key(a) for a in word))


def letter_name(letter):
    return f"y{letter}" if letter > 0 else f"z{-letter}"


def involute_word(word):
    """(reversed word, sign) with sign = (-1)^(number of z letters)."""
    nz = sum(1 for a in word if a < 0)
    return tuple(reversed(word)), (-1 if nz % 2 else 1)


@dataclass(frozen=True)
class MultiDegree:
    """Finitely supported degree vectors in the y and z variables, stored as
    sorted ``(index, degree)`` pairs with positive degrees."""

    deg_y: tuple = ()
    deg_z: tuple = ()

    @classmethod
    def from_maps(cls, deg_y=None, deg_z=None):
        dy = tuple(sorted((i, d) for i, d in (deg_y or {}).items() if d))
        dz = tuple(sorted((i, d) for i, d in (deg_z or {}).items() if d))
        for _, d in dy + dz:
            if d < 0:
                raise ValueError("degrees must be nonnegative")
        return cls(dy, dz)

    @classmethod
    def of_word(cls, word):
        dy, dz = {}, {}
        for a in word:
            if a > 0:
                dy[a] = dy.get(a, 0) + 1
            else:
                dz[-a] = dz.get(-a, 0) + 1
        return cls.from_maps(dy, dz)

    @property
    def total(self):
        return sum(d for _, d in self.deg_y) + sum(d for _, d in self.deg_z)

    def y_map(self):
        return dict(self.deg_y)

    def z_map(self):
        return dict(self.deg_z)

    def letter_counts(self):
        """{letter: degree} over the letter encoding."""
        out = {i: d for i, d in self.deg_y}
        out.update({-i: d for i, d in self.deg_z})
        return out

    def letters(self):
        return sorted(self.letter_counts(), key=letter_key)

    def sort_key(self):
        return (self.total, self.deg_y, self.deg_z)

    def __str__(self):
        parts = [f"{k}{i}^{d}" if d > 1 else f"{k}{i}" for k, pairs in ((Y, self.deg_y), (Z, self.deg_z))
                 for i, d in pairs]
        return " ".join(parts) if parts else "1"


class StarPolynomial:
    """Sparse noncommutative polynomial in the y (symmetric) and z (skew)
    variables. Treated as immutable: every operation returns a new object."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms=None):
        self.field = field
        if terms is None:
            self.terms = {}
        else:
            self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def _raw(cls, field, terms):
        # terms already pruned of zeros
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    # constructors -----------------------------------------------------

    @classmethod
    def constant(cls, field, c=1):
        return cls(field, {(): field.coerce(c)})

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def word(cls, field, word, c=1):
        return cls(field, {tuple(word): field.coerce(c)})

    @classmethod
    def variable(cls, field, var: Variable):
        return cls._raw(field, {(var.letter,): field.one})

    # queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word):
        return FieldElement(self.field, self.terms.get(tuple(word), self.field.zero))

    def words(self):
        return sorted(self.terms, key=word_key)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def letters(self):
        return sorted({a for w in self.terms for a in w}, key=letter_key)

    def variables(self):
        return [Variable.from_letter(a) for a in self.letters()]

    def degree_in(self, letter):
        return max((w.count(letter) for w in self.terms), default=-1)

    def is_homogeneous(self):
        return len({MultiDegree.of_word(w) for w in self.terms}) <= 1

    def is_symmetric(self):
        return self.involute() == self

    def is_skew(self):
        return self.involute() == -self

    # arithmetic -------------------------------------------------------

    def _check(self, other):
        if other.field is not self.field:
            raise DescriptorMismatch(f"{self.field.name} vs {other.field.name}")

    def _lift(self, other):
        if isinstance(other, StarPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)) or hasattr(other, "numerator"):
            return StarPolynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        terms = dict(self.terms)
        for w, c in other.terms.items():
            v = F.add(terms.get(w, F.zero), c)
            if v:
                terms[w] = v
            else:
                terms.pop(w, None)
        return StarPolynomial._raw(F, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return StarPolynomial._raw(F, {w: F.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        if not c:
            return StarPolynomial(F)
        return StarPolynomial._raw(F, {w: F.mul(c, v) for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, StarPolynomial):
            if isinstance(other, (int, FieldElement)) or hasattr(other, "numerator"):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        F = self.field
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = F.add(terms.get(w, F.zero), F.mul(c1, c2))
                if v:
                    terms[w] = v
                else:
                    terms.pop(w, None)
        return StarPolynomial._raw(F, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElement)) or hasattr(other, "numerator"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = StarPolynomial.constant(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, StarPolynomial):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, int):
            return self == StarPolynomial.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.name, frozenset(self.terms.items())))

    def __repr__(self):
        return f"StarPolynomial({self}, {self.field.name})"

    def __str__(self):
        from .grammar import format_polynomial
        return format_polynomial(self)

    # involution and friends -------------------------------------------

    def involute(self):
        F = self.field
        terms = {}
        for w, c in self.terms.items():
            rw, sign = involute_word(w)
            terms[rw] = c if sign > 0 else F.neg(c)
        return StarPolynomial._raw(F, terms)

    def sym_skew_split(self):
        """(f+, f-) with f+ = (f + f*)/2 symmetric and f- = (f - f*)/2 skew."""
        half = self.field.inv(self.field.from_int(2))
        star = self.involute()
        return (self + star).scale(half), (self - star).scale(half)

    def multihomogeneous_components(self):
        """[(MultiDegree, component)] ordered by multidegree; sums to ``self``."""
        groups = {}
        for w, c in self.terms.items():
            groups.setdefault(MultiDegree.of_word(w), {})[w] = c
        return [(md, StarPolynomial._raw(self.field, groups[md]))
                for md in sorted(groups, key=MultiDegree.sort_key)]

    def component(self, md: MultiDegree):
        return StarPolynomial._raw(self.field, {w: c for w, c in self.terms.items()
                                                if MultiDegree.of_word(w) == md})

    def substitute(self, mapping, check=True):
        """Image under the endomorphism sending each variable in ``mapping``
        (keys: :class:`Variable` or letter ints) to the given polynomial.

        With ``check`` the images of y's must be symmetric and the images of
        z's skew, so that the map commutes with the involution.
        """
        F = self.field
        images = {}
        for var, img in mapping.items():
            letter = var.letter if isinstance(var, Variable) else var
            if not isinstance(img, StarPolynomial):
                img = StarPolynomial.constant(F, img)
            self._check(img)
            if check:
                star = img.involute()
                ok = star == img if letter > 0 else star == -img
                if not ok:
                    raise SymmetryViolation(Variable.from_letter(letter))
            images[letter] = img
        out = {}
        cache = {}
        for w, c in self.terms.items():
            factors = [images.get(a) for a in w]
            if all(f is None for f in factors):
                _acc(F, out, w, c)
                continue
            expanded = _expand_word(F, w, images, cache)
            for w2, c2 in expanded.items():
                _acc(F, out, w2, F.mul(c, c2))
        return StarPolynomial._raw(F, {w: c for w, c in out.items() if c})


def _acc(F, terms, w, c):
    terms[w] = F.add(terms.get(w, F.zero), c)


def _expand_word(F, word, images, cache):
    """Terms of the product of the images of the letters of ``word``."""
    if word in cache:
        return cache[word]
    if not word:
        return {(): F.one}
    if len(word) == 1:
        a = word[0]
        img = images.get(a)
        res = dict(img.terms) if img is not None else {(a,): F.one}
        cache[word] = res
        return res
    mid = len(word) // 2
    left = _expand_word(F, word[:mid], images, cache)
    right = _expand_word(F, word[mid:], images, cache)
    res = {}
    for w1, c1 in left.items():
        for w2, c2 in right.items():
            w = w1 + w2
            res[w] = F.add(res.get(w, F.zero), F.mul(c1, c2))
    res = {w: c for w, c in res.items() if c}
    cache[word] = res
    return res


# convenience constructors ---------------------------------------------


def y(k, field):
    return StarPolynomial.variable(field, Variable(Y, k))


def z(k, field):
    return StarPolynomial.variable(field, Variable(Z, k))


def commutator(f, g):
    return f * g - g * f


def left_normed_commutator(items):
    """[[...[a1, a2], ...], an] for n >= 2."""
    items = list(items)
    if len(items) < 2:
        raise ValueError("a commutator needs at least two arguments")
    acc = items[0]
    for g in items[1:]:
        acc = commutator(acc, g)
    return acc


def words_of_multidegree(md: MultiDegree):
    """All distinct words with multidegree ``md`` in graded-lex order."""
    counts = md.letter_counts()
    letters = sorted(counts, key=letter_key)
    n = md.total
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for a in letters:
            if remaining[a]:
                remaining[a] -= 1
                prefix.append(a)
                rec(prefix, remaining)
                prefix.pop()
                remaining[a] += 1

    rec([], dict(counts))
    return out


def words_up_to(letters, max_degree):
    """All words of length <= max_degree over ``letters`` in graded-lex order."""
    letters = sorted(letters, key=letter_key)
    out = []
    for d in range(max_degree + 1):
        out.extend(product(letters, repeat=d))
    return out
