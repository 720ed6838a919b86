"""Verification suites, one per catalog entry.

Each suite returns a :class:`VerificationReport`. Slice comparisons are
grouped by the letter set of the slice so consequence rows are generated once
per group; groups may run in worker processes (``STARPI_THREADS``) and are
merged back in slice order.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor

from .catalog import TheoremId, basis_words_for_slice, commutation_pairs, generators_for
from .consequences import ConsequenceStrategy, slice_consequences
from .decision import (EvalMode, Slice, VerificationReport, central_space_of_slice, equal_mod_identities,
                       identity_space_of_slice, is_central_poly, is_identity, slices_up_to,
                       symmetric_space_of_slice)
from .errors import MissingParameter, ModeFieldMismatch
from .freealg import MultiDegree, StarPolynomial, words_up_to
from .grammar import format_polynomial, parse_polynomial
from .linalg import SpanBasis, nullspace, rref
from .ut2 import STAR, S, InvolutionKind


def threads():
    try:
        return max(1, int(os.environ.get("STARPI_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """``[fn(x) for x in items]``, fanned out over worker processes when
    STARPI_THREADS > 1; results keep the input order."""
    items = list(items)
    n = threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))


def _group_by_letters(slices):
    groups = {}
    for sl in slices:
        groups.setdefault(tuple(sl.letters()), []).append(sl)
    return groups


# generator checks -----------------------------------------------------------


def _check_generators(report, gens, kind, mode, prop):
    test = is_identity if prop == "identity" else is_central_poly
    for g in gens:
        v = test(g, kind, mode)
        report.add(f"{prop}: {format_polynomial(g)}", v.holds, witness=v.witness)


# slice comparisons ------------------------------------------------------------


def _claimed_vs_actual(task):
    """Compare the consequence span with the exact space on each slice of one
    letter group. Returns a list of (slice id, dims, status)."""
    letters, slices, space_gens, ideal_gens, kind, mode, strategy, bound, prop, extra_constants = task
    cons = None
    if letters:
        cons = slice_consequences(space_gens, ideal_gens, letters, bound, strategy, mode)
    out = []
    for sl in slices:
        actual = (central_space_of_slice if prop == "central" else identity_space_of_slice)(sl, kind, mode)
        if not letters:
            # constants slice: the unit is central, never an identity
            claimed_dim = 1 if (prop == "central" and extra_constants) else 0
            claimed = SpanBasis(mode.field, sl.words, [[mode.field.one]] if claimed_dim else [])
        else:
            claimed = cons.in_slice(sl)
        sound = actual.contains_span(claimed)
        dims = {"slice": sl.dim, "actual": actual.dim, "claimed": claimed.dim}
        if not sound:
            status = "fail"
        elif claimed.dim == actual.dim:
            status = "pass"
        else:
            status = "warn"
        out.append((sl.id, dims, status))
    return out


def _slice_comparison(report, label, space_gens, ideal_gens, kind, mode, strategy, max_degree, prop,
                      extra_constants=False):
    slices = slices_up_to(max_degree)
    groups = _group_by_letters(slices)
    tasks = [(letters, sls, space_gens, ideal_gens, kind, mode, strategy, max_degree, prop, extra_constants)
             for letters, sls in groups.items()]
    results = {}
    for group in parallel_map(_claimed_vs_actual, tasks):
        for sid, dims, status in group:
            results[sid] = (dims, status)
    for sl in slices:
        dims, status = results[sl.id]
        name = f"{label} [{sl.id}]"
        if status == "warn":
            report.add(name + " strategy exhausted without match", True, dims=dims, warn=True)
        else:
            report.add(name, status == "pass", dims=dims,
                       witness=None if status == "pass" else {"slice": sl.id})


def _basis_checks(report, theorem, q, mode, max_degree):
    """Per-slice count and independence of the quotient basis."""
    F = mode.field
    for sl in slices_up_to(max_degree):
        ids = identity_space_of_slice(sl, STAR, mode)
        basis = basis_words_for_slice(theorem, sl, q=q, field=F)
        vecs = [ids.vector(b) for b in basis]
        rank = len(rref(F, list(ids.rows) + vecs, sl.dim)[0])
        independent = rank == ids.dim + len(vecs)
        dims = {"slice": sl.dim, "identity": ids.dim, "basis": len(basis)}
        ok = independent and sl.dim == ids.dim + len(basis)
        report.add(f"quotient basis [{sl.id}]", ok, dims=dims, witness=None if ok else {"slice": sl.id})


def torus_classes(letters, max_degree, q):
    """Words over ``letters`` of length <= max_degree grouped by the
    per-letter degree modulo q - 1."""
    classes = {}
    for w in words_up_to(letters, max_degree):
        counts = MultiDegree.of_word(w).letter_counts()
        key = tuple(counts.get(a, 0) % (q - 1) for a in letters)
        classes.setdefault(key, []).append(w)
    return classes


def identity_space_of_words(words, kind, mode):
    """Identities spanned by an arbitrary word list (finite regimes reduce
    exponents, so non-homogeneous identities are found as well)."""
    from .decision import _constraints_functions
    F = mode.field
    cons = _constraints_functions(list(words), InvolutionKind.parse(kind), mode, "identity")
    return SpanBasis(F, words, nullspace(F, cons, len(words)))


def _basis_class_checks(report, q, mode, max_degree):
    """Finite-field basis count on torus classes of the degree filtration:
    for each canonical letter set and class, words of degree <= max_degree
    in that class split into identities plus the basis elements whose
    multidegree lies in the class."""
    F = mode.field
    letter_sets = sorted({tuple(sl.letters()) for sl in slices_up_to(max_degree) if sl.letters()})
    for letters in letter_sets:
        for key, words in sorted(torus_classes(letters, max_degree, q).items()):
            ids = identity_space_of_words(words, STAR, mode)
            mds = sorted({MultiDegree.of_word(w) for w in words}, key=MultiDegree.sort_key)
            basis = [b for md in mds for b in basis_words_for_slice(TheoremId.BasisStarFinite, md, q=q, field=F)]
            vecs = [ids.vector(b) for b in basis]
            rank = len(rref(F, list(ids.rows) + vecs, len(words))[0])
            ok = rank == len(words) == ids.dim + len(basis)
            names = ",".join(f"{'y' if a > 0 else 'z'}{abs(a)}" for a in letters)
            cls = "(" + ",".join(map(str, key)) + f") mod {q - 1}"
            dims = {"words": len(words), "identity": ids.dim, "basis": len(basis)}
            report.add(f"quotient basis by degree class [{names} {cls}]", ok, dims=dims,
                       witness=None if ok else {"letters": names, "class": list(key)})


# suites -------------------------------------------------------------------------


def _require_finite(mode, theorem):
    if mode.is_generic:
        raise ModeFieldMismatch(f"{theorem.value} is a finite-field statement; use a finite field with exhaustive mode")


def _require_generic(mode, theorem, char0=None):
    if not mode.is_generic:
        raise ModeFieldMismatch(f"{theorem.value} is an infinite-field statement; use Q or --mode generic")
    if char0 is True and mode.kind != "char0":
        raise ModeFieldMismatch(f"{theorem.value} needs characteristic 0 (field Q)")
    if char0 is False and mode.kind != "charp":
        raise ModeFieldMismatch(f"{theorem.value} needs an infinite field of characteristic p (--mode generic)")


def verify_theorem(theorem, mode, max_degree=4, strategy=None):
    theorem = TheoremId.parse(theorem)
    F = mode.field
    strategy = strategy or ConsequenceStrategy.default_for(F)
    report = VerificationReport(theorem.value, F.name, mode.name)
    t0 = time.perf_counter()
    q = F.q if F.is_finite else None
    p = F.p if F.is_finite else None
    T = TheoremId

    if theorem in (T.IdStarInfinite, T.IdSInfinite):
        _require_generic(mode, theorem)
        kind = STAR if theorem is T.IdStarInfinite else S
        gens = generators_for(theorem, field=F)
        _check_generators(report, gens, kind, mode, "identity")
        _slice_comparison(report, "identity dims", [], gens, kind, mode, strategy, max_degree, "identity")
    elif theorem in (T.IdStarFinite, T.IdSFinite):
        _require_finite(mode, theorem)
        kind = STAR if theorem is T.IdStarFinite else S
        gens = generators_for(theorem, q=q, field=F)
        _check_generators(report, gens, kind, mode, "identity")
        _slice_comparison(report, "identity dims", [], gens, kind, mode, strategy, max_degree, "identity")
    elif theorem is T.BasisStarInfinite:
        _require_generic(mode, theorem)
        _basis_checks(report, theorem, None, mode, max_degree)
    elif theorem is T.BasisStarFinite:
        _require_finite(mode, theorem)
        _basis_checks(report, theorem, q, mode, max_degree)
        _basis_class_checks(report, q, mode, max_degree)
    elif theorem is T.CentralStarChar0:
        _require_generic(mode, theorem, char0=True)
        cen = [g for g in generators_for(theorem, field=F) if g.degree() > 0]
        ids = generators_for(T.IdStarInfinite, field=F)
        _check_generators(report, cen, STAR, mode, "central")
        _non_triviality_star(report, mode)
        _slice_comparison(report, "central dims", cen, ids, STAR, mode, strategy, max_degree, "central",
                          extra_constants=True)
    elif theorem is T.CentralStarInfCharP:
        _require_generic(mode, theorem, char0=False)
        cen = generators_for(theorem, p=p, field=F)
        ids = generators_for(T.IdStarInfinite, field=F)
        _check_generators(report, cen, STAR, mode, "central")
        _non_triviality_star(report, mode)
        _slice_comparison(report, "central dims", cen, ids, STAR, mode, strategy, max_degree, "central",
                          extra_constants=True)
    elif theorem is T.CentralStarFinite:
        _require_finite(mode, theorem)
        cen = generators_for(theorem, q=q, field=F)
        ids = generators_for(T.IdStarFinite, q=q, field=F)
        _check_generators(report, cen, STAR, mode, "central")
        _non_triviality_star(report, mode)
        _slice_comparison(report, "central dims", cen, ids, STAR, mode, strategy, max_degree, "central",
                          extra_constants=True)
    elif theorem is T.CentralS:
        gens = generators_for(theorem, field=F)
        _check_generators(report, gens, S, mode, "central")
        y1 = gens[0]
        v = is_identity(y1, S, mode)
        report.add("non-triviality: y1 is not an identity", not v.holds, witness=v.witness if v.holds else None)
        _central_s_slices(report, mode, max_degree)
    elif theorem is T.CommutationLemma:
        for lhs, rhs in commutation_pairs(3):
            f, g = parse_polynomial(lhs, F), parse_polynomial(rhs, F)
            v = equal_mod_identities(f, g, STAR, mode)
            report.add(f"{lhs} = {rhs} mod Id", v.holds, witness=v.witness)
    elif theorem is T.EvenZLemma:
        for n in range(1, 3):
            even = parse_polynomial("*".join(f"z{i}" for i in range(1, 2 * n + 1)), F)
            odd = parse_polynomial("*".join(f"z{i}" for i in range(1, 2 * n + 2)), F)
            v = is_central_poly(even, STAR, mode)
            report.add(f"central: {format_polynomial(even)}", v.holds, witness=v.witness)
            v = is_central_poly(odd, STAR, mode)
            report.add(f"not central: {format_polynomial(odd)}", not v.holds)
    elif theorem is T.PowerPQLemma:
        _require_finite(mode, theorem)
        gens = generators_for(theorem, q=q, field=F)
        _check_generators(report, gens, STAR, mode, "identity")
    elif theorem is T.WrapIdentity:
        gens = generators_for(theorem, field=F)
        _check_generators(report, gens, STAR, mode, "identity")
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def _non_triviality_star(report, mode):
    """z1*z2 is central but differs from every constant modulo identities."""
    w = scalar_witness(parse_polynomial("z1*z2", mode.field), STAR, mode)
    report.add("non-triviality: z1*z2 is not in Id + F", w is not None, witness=w)


def scalar_witness(f, kind, mode):
    """Two evaluations of a central ``f`` with different scalar values, or
    ``None`` when every evaluation gives the same scalar."""
    from .ut2 import evaluate, generic_assignment, assignment_from_point, coordinates, point_grid
    F = mode.field
    if mode.is_generic:
        m = evaluate(f, generic_assignment(f.letters(), kind, F))
        if m.e11.degree() <= 0:
            return None
        # scalar depends on the generic coordinates: zero point vs one point
        letters = f.letters()
        zeros = assignment_from_point(letters, kind, F, [0] * len(coordinates(letters, kind)))
        for fill in range(1, 4):
            other = assignment_from_point(letters, kind, F, [fill] * len(coordinates(letters, kind)))
            a, b = evaluate(f, zeros), evaluate(f, other)
            if a.e11 != b.e11:
                return {"first": zeros.to_json(), "first_value": str(a),
                        "second": other.to_json(), "second_value": str(b)}
        return {"generic_value": str(m)}
    letters = f.letters()
    grid = point_grid(letters, kind, F)
    from .ut2 import batch_evaluate
    e11, _, _ = batch_evaluate(f, kind, grid)
    diff = [i for i in range(1, len(e11)) if e11[i] != e11[0]]
    if not diff:
        return None
    keys = list(grid)
    pts = [[int(grid[k][i]) for k in keys] for i in (0, diff[0])]
    a, b = (assignment_from_point(letters, kind, F, pt) for pt in pts)
    return {"first": a.to_json(), "first_value": str(evaluate(f, a)),
            "second": b.to_json(), "second_value": str(evaluate(f, b))}


def _central_s_slices(report, mode, max_degree):
    F = mode.field
    for sl in slices_up_to(max_degree):
        central = central_space_of_slice(sl, S, mode)
        ids = identity_space_of_slice(sl, S, mode)
        sym = symmetric_space_of_slice(sl, F)
        claimed = ids + sym if sl.words else ids
        if not sl.letters():
            claimed = SpanBasis(F, sl.words, [[F.one]])
        ok = claimed.dim == central.dim and central.contains_span(claimed)
        dims = {"slice": sl.dim, "central": central.dim, "identity": ids.dim, "claimed": claimed.dim}
        report.add(f"central = Id + symmetric [{sl.id}]", ok, dims=dims, witness=None if ok else {"slice": sl.id})


def central_space_table(kind, mode, max_degree, q=None):
    """Rows for the central-space command: per-slice dimensions."""
    kind = InvolutionKind.parse(kind)
    F = mode.field
    rows = []
    for sl in slices_up_to(max_degree):
        ids = identity_space_of_slice(sl, kind, mode)
        cen = central_space_of_slice(sl, kind, mode)
        row = {"slice": sl.id, "slice_dim": sl.dim, "identity_dim": ids.dim, "central_dim": cen.dim,
               "central_mod_identity": cen.dim - ids.dim, "quotient_dim": sl.dim - ids.dim}
        if kind is STAR:
            theorem = TheoremId.BasisStarFinite if F.is_finite and not mode.is_generic else TheoremId.BasisStarInfinite
            row["basis_count"] = len(basis_words_for_slice(theorem, sl, q=F.q if F.is_finite else None, field=F))
        rows.append(row)
    return rows
