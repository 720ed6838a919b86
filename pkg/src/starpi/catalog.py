"""Generator sets and quotient-basis families for UT2 with involution.

Every family is stored as text in the polynomial grammar and parsed on
request, so the catalog doubles as a parser regression corpus. Templates use
``{q}``, ``{p}`` and derived exponents, filled in from the parameters.
"""
from __future__ import annotations

import enum
import itertools

from .errors import InconsistentPQ, MissingParameter
from .field import Field, get_field
from .freealg import MultiDegree, StarPolynomial, commutator, words_of_multidegree
from .grammar import format_polynomial, parse_polynomial


class TheoremId(enum.Enum):
    IdStarInfinite = "IdStarInfinite"
    IdStarFinite = "IdStarFinite"
    IdSInfinite = "IdSInfinite"
    IdSFinite = "IdSFinite"
    CentralStarChar0 = "CentralStarChar0"
    CentralStarInfCharP = "CentralStarInfCharP"
    CentralStarFinite = "CentralStarFinite"
    CentralS = "CentralS"
    BasisStarInfinite = "BasisStarInfinite"
    BasisStarFinite = "BasisStarFinite"
    CommutationLemma = "CommutationLemma"
    EvenZLemma = "EvenZLemma"
    PowerPQLemma = "PowerPQLemma"
    WrapIdentity = "WrapIdentity"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for t in cls:
            if t.value.lower() == str(value).lower():
                return t
        raise ValueError(f"unknown theorem id {value!r}")


_STAR_INF = ["[y1,y2]", "[z1,z2]", "[y1,z1]*[y2,z2]", "z1*y1*z2 - z2*y1*z1"]
_STAR_FIN = ["(y1^{q} - y1)*[z1,y2]", "(y1^{q} - y1)*(y2^{q} - y2)", "z1^{q} - z1",
             "(z1^{qm1} - 1)*[z1,y1]", "(y1^{q} - y1)*z1 - 1/2*[z1,y1]"]
_S_INF = ["[y1,y2]", "[z1,y1]", "[z1,z2]*[z3,z4]", "z1*z2*z3 - z3*z2*z1"]
_S_FIN = ["y1^{q} - y1", "(z1^{q} - z1)*(z2^{q} - z2)", "z1^{qp1} - z1^2",
          "(z1^{q} - z1)*z2 + z2*(z1^{q} - z1)", "[z1,z2]*(z3^{q} - z3)"]

CATALOG = {
    TheoremId.IdStarInfinite: ("star identities, infinite field", _STAR_INF),
    TheoremId.IdStarFinite: ("star identities, finite field", _STAR_INF + _STAR_FIN),
    TheoremId.IdSInfinite: ("s identities, infinite field", _S_INF),
    TheoremId.IdSFinite: ("s identities, finite field", _S_INF + _S_FIN),
    TheoremId.CentralStarChar0: ("star central polynomials, char 0", ["z1*z2", "1"]),
    TheoremId.CentralStarInfCharP: ("star central polynomials, infinite field of char p",
                                    ["z1*z2", "y1^{p}"]),
    TheoremId.CentralStarFinite: ("star central polynomials, finite field", None),
    TheoremId.CentralS: ("s central polynomials", ["y1"]),
    TheoremId.BasisStarInfinite: ("star quotient basis, infinite field", None),
    TheoremId.BasisStarFinite: ("star quotient basis, finite field", None),
    TheoremId.CommutationLemma: ("reordering z factors before [z, y]", None),
    TheoremId.EvenZLemma: ("products of an even number of z are central", None),
    TheoremId.PowerPQLemma: ("y^(pq) - y^p is a star identity", ["y1^{pq} - y1^{p}"]),
    TheoremId.WrapIdentity: ("wrapped star identities", None),
}

# which parameters each id needs: "q" (finite field size), "p" (characteristic)
_NEEDS = {
    TheoremId.IdStarFinite: "q", TheoremId.IdSFinite: "q", TheoremId.CentralStarFinite: "q",
    TheoremId.BasisStarFinite: "q", TheoremId.CentralStarInfCharP: "p", TheoremId.PowerPQLemma: "q",
}


def citation(theorem):
    return CATALOG[TheoremId.parse(theorem)][0]


def _params(theorem, q, p):
    need = _NEEDS.get(theorem)
    if q is not None:
        if p is None:
            p = _prime_of(q)
        elif _prime_of(q) != p:
            raise InconsistentPQ(f"q={q} is not a power of p={p}")
    if need == "q" and q is None:
        raise MissingParameter(f"{theorem.value} needs q")
    if need == "p" and p is None:
        raise MissingParameter(f"{theorem.value} needs p")
    return q, p


def _prime_of(q):
    for d in range(2, q + 1):
        if q % d == 0:
            p = d
            break
    n = q
    while n % p == 0:
        n //= p
    if n != 1:
        raise InconsistentPQ(f"{q} is not a prime power")
    return p


def _field_for(field, q, p):
    if field is None:
        if q is not None:
            return get_field(f"F{q}")
        if p is not None:
            return get_field(f"F{p}")
        return Field.rational()
    return field if isinstance(field, Field) else get_field(field)


def _fill(template, q, p):
    subs = {}
    if q is not None:
        subs.update(q=q, qm1=q - 1, qp1=q + 1)
    if p is not None:
        subs.update(p=p)
    if q is not None and p is not None:
        subs["pq"] = p * q
    return template.format(**subs)


def generator_texts(theorem, q=None, p=None, max_m=3, max_n=2):
    """The generators of ``theorem`` as grammar text."""
    theorem = TheoremId.parse(theorem)
    q, p = _params(theorem, q, p)
    if theorem is TheoremId.CentralStarFinite:
        texts = [f"{l}*y1*(y2^{q + l - 1} - y2^{l}) + y1^{q}*y2^{l}" for l in range(1, p + 1)]
        return texts + ["z1*z2"]
    if theorem is TheoremId.CommutationLemma:
        return [f"({a}) - ({b})" for a, b in commutation_pairs(max_m)]
    if theorem is TheoremId.EvenZLemma:
        return ["*".join(f"z{i}" for i in range(1, 2 * n + 1)) for n in range(1, max_n + 1)]
    if theorem is TheoremId.WrapIdentity:
        return [w for f in _STAR_INF for w in _wrap_texts(f, 2)]
    if theorem in (TheoremId.BasisStarInfinite, TheoremId.BasisStarFinite):
        raise MissingParameter("basis families are indexed by slice; use basis_words_for_slice")
    return [_fill(t, q, p) for t in CATALOG[theorem][1]]


def _wrap_texts(f, arity):
    # fresh variables past the generator's own indices
    yf, zf = f"y{arity + 1}", f"z{arity + 1}"
    return [f"{yf}*({f})*y{arity + 2}", f"{yf}*({f})*{zf}", f"{zf}*({f})*{yf}", f"{zf}*({f})*z{arity + 2}"]


def commutation_pairs(max_m=3):
    """Pairs (lhs, rhs) of texts that agree modulo star identities.

    Reordering: z_s(1)..z_s(m)[z_s(m+1), y1] = z1..zm[z(m+1), y1] for every
    permutation s of 1..m+1. Moving the commutator: z1..zm[z(m+1), y1]
    = (-1)^(m-i) z1..zi[z(m+1), y1]z(i+1)..zm for 0 <= i <= m.
    """
    pairs = []
    for m in range(1, max_m + 1):
        base = "*".join(f"z{j}" for j in range(1, m + 1)) + f"*[z{m + 1},y1]"
        for perm in itertools.permutations(range(1, m + 2)):
            head = "*".join(f"z{j}" for j in perm[:m])
            lhs = f"{head}*[z{perm[m]},y1]"
            if lhs != base:
                pairs.append((lhs, base))
        for i in range(0, m):
            head = "*".join(f"z{j}" for j in range(1, i + 1))
            tail = "*".join(f"z{j}" for j in range(i + 1, m + 1))
            sign = "-" if (m - i) % 2 else ""
            body = f"[z{m + 1},y1]*{tail}"
            rhs = f"{sign}{head}*{body}" if head else f"{sign}{body}"
            pairs.append((base, rhs))
    return pairs


def generators_for(theorem, q=None, p=None, field=None, **kw):
    """Parsed generator list over ``field`` (default: F_q, F_p or Q)."""
    theorem = TheoremId.parse(theorem)
    q, p = _params(theorem, q, p)
    F = _field_for(field, q, p)
    return [parse_polynomial(t, F) for t in generator_texts(theorem, q, p, **kw)]


def is_lambda(exponents, q):
    """All entries in [0, 2q) and at most one entry >= q."""
    exponents = tuple(exponents)
    if any(s < 0 or s >= 2 * q for s in exponents):
        return False
    return sum(1 for s in exponents if s >= q) <= 1


def _ypow(F, s):
    word = tuple(i for i, e in enumerate(s, 1) for _ in range(e))
    return StarPolynomial.word(F, word)


def _zpow(F, r):
    word = tuple(-i for i, e in enumerate(r, 1) for _ in range(e))
    return StarPolynomial.word(F, word)


def _dense(md):
    """Exponent vectors over y1..yn, z1..zm (missing indices read as 0)."""
    ym, zm = md.y_map(), md.z_map()
    n = max(ym, default=0)
    m = max(zm, default=0)
    return [ym.get(i, 0) for i in range(1, n + 1)], [zm.get(i, 0) for i in range(1, m + 1)]


def basis_words_for_slice(theorem, sl, q=None, field=None):
    """Quotient-basis elements whose multidegree is that of ``sl``."""
    theorem = TheoremId.parse(theorem)
    md = sl.multidegree if hasattr(sl, "multidegree") else sl
    if theorem is TheoremId.BasisStarFinite and q is None:
        raise MissingParameter("BasisStarFinite needs q")
    if theorem not in (TheoremId.BasisStarInfinite, TheoremId.BasisStarFinite):
        raise ValueError(f"{theorem.value} is not a basis family")
    F = _field_for(field, q, None)
    s, r = _dense(md)
    out = []
    finite = theorem is TheoremId.BasisStarFinite
    if r:
        m = len(r)
        if not finite or all(x < q for x in s) and all(x < q for x in r):
            # product family y^s z^r (r_m >= 1 holds since z_m is the last z)
            if r[m - 1] >= 1:
                out.append(_ypow(F, s) * _zpow(F, r))
        # commutator family y^s' z^r' [z_m, y_k] with s = s' + e_k, r = r' + e_m
        for k in range(1, len(s) + 1):
            if s[k - 1] < 1 or r[m - 1] < 1:
                continue
            s2 = list(s)
            s2[k - 1] -= 1
            r2 = list(r)
            r2[m - 1] -= 1
            if finite and (any(x >= q for x in s2) or any(x >= q for x in r)):
                continue
            zm = StarPolynomial.word(F, (-m,))
            yk = StarPolynomial.word(F, (k,))
            out.append(_ypow(F, s2) * _zpow(F, r2) * commutator(zm, yk))
    else:
        if not finite or is_lambda(s, q):
            out.append(_ypow(F, s))
    return out


def dump(q=3, p=None, field=None):
    """Catalog listing: ``[(id, citation, [text, ...])]`` in a stable order."""
    p = p if p is not None else _prime_of(q)
    out = []
    for t in TheoremId:
        if t in (TheoremId.BasisStarInfinite, TheoremId.BasisStarFinite):
            from .decision import slices_up_to
            texts = []
            for sl in slices_up_to(2):
                texts += [format_polynomial(b) for b in basis_words_for_slice(t, sl, q=q)]
        else:
            F = _field_for(field, q, p)
            texts = [format_polynomial(f) for f in generators_for(t, q=q, p=p, field=F)]
        out.append((t.value, citation(t), texts))
    return out
