"""Command line front-end.

Exit codes: 0 when the property holds or the suite passes (warnings
allowed), 1 when it fails, 2 on usage, syntax or configuration errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog
from .consequences import ConsequenceStrategy
from .decision import EvalMode, is_central_poly, is_identity
from .errors import StarPIError, PolynomialSyntaxError
from .field import FIELD_NAMES, get_field
from .grammar import format_polynomial, parse_polynomial
from .suites import central_space_table, verify_theorem
from .ut2 import InvolutionKind

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p, field_default="F3"):
    p.add_argument("--field", default=field_default, choices=FIELD_NAMES)
    p.add_argument("--mode", default="auto", choices=("auto", "exhaustive", "generic"),
                   help="generic over a finite prime field models an infinite field of that characteristic")
    p.add_argument("--output", default="text", choices=("text", "json"))


def build_parser():
    parser = _Parser(prog="starpi", description="Identities and central polynomials of UT2 with involution.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="test one polynomial")
    c.add_argument("--poly", required=True)
    c.add_argument("--involution", default="star", choices=("star", "s"))
    c.add_argument("--property", default="identity", choices=("identity", "central"))
    _common(c)

    v = sub.add_parser("verify-theorem", help="run the verification suite of a catalog entry")
    v.add_argument("theorem", choices=[t.value for t in catalog.TheoremId])
    v.add_argument("--max-degree", type=int, default=4)
    v.add_argument("--max-subst-degree", type=int)
    v.add_argument("--max-support", type=int)
    v.add_argument("--coefficients", choices=("all", "unit_pairs"))
    _common(v)

    s = sub.add_parser("central-space", help="per-slice identity and central dimensions")
    s.add_argument("--involution", default="star", choices=("star", "s"))
    s.add_argument("--max-degree", type=int, default=4)
    _common(s)

    d = sub.add_parser("catalog-dump", help="print every generator family")
    d.add_argument("--field", default="F3", choices=[n for n in FIELD_NAMES if n != "Q"],
                   help="finite field supplying q and p for parametrised families")
    d.add_argument("--output", default="text", choices=("text", "json"))
    return parser


def resolve_mode(field_name, mode_name):
    field = get_field(field_name)
    if mode_name == "auto":
        return EvalMode.default_for(field)
    if mode_name == "exhaustive":
        if not field.is_finite:
            raise UsageError("exhaustive mode needs a finite field")
        return EvalMode.finite_exhaustive(field)
    if not field.is_finite:
        return EvalMode.generic_char0()
    if not field.is_prime_field:
        raise UsageError("generic mode over a finite field needs a prime field (characteristic p)")
    return EvalMode.generic_char_p(field.p)


def _emit(args, payload, text):
    if args.output == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def run_check(args):
    mode = resolve_mode(args.field, args.mode)
    f = parse_polynomial(args.poly, mode.field)
    kind = InvolutionKind.parse(args.involution)
    test = is_identity if args.property == "identity" else is_central_poly
    verdict = test(f, kind, mode)
    payload = {"polynomial": format_polynomial(f), "involution": kind.value, "field": mode.field.name,
               "mode": mode.name, "property": args.property, "holds": verdict.holds}
    if verdict.witness is not None:
        payload["witness"] = verdict.witness
    word = "is" if verdict.holds else "is NOT"
    adjective = "an identity" if args.property == "identity" else "central"
    text = f"{payload['polynomial']} {word} {adjective} for (UT2, {kind.value}) [{mode.name}]"
    if verdict.witness is not None:
        text += "\nwitness: " + json.dumps(verdict.witness, sort_keys=True)
    _emit(args, payload, text)
    return EXIT_OK if verdict.holds else EXIT_FALSE


def _strategy(args, field):
    base = ConsequenceStrategy.default_for(field)
    return ConsequenceStrategy(args.max_subst_degree or base.max_subst_degree,
                               args.max_support or base.max_support,
                               args.coefficients or base.coefficient_set)


def run_verify(args):
    theorem = catalog.TheoremId.parse(args.theorem)
    mode_name = args.mode
    if mode_name == "auto" and theorem is catalog.TheoremId.CentralStarInfCharP:
        mode_name = "generic"
    mode = resolve_mode(args.field, mode_name)
    if args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    report = verify_theorem(theorem, mode, args.max_degree, _strategy(args, mode.field))
    if args.output == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_FALSE


def run_central_space(args):
    mode = resolve_mode(args.field, args.mode)
    if args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    t0 = time.perf_counter()
    rows = central_space_table(args.involution, mode, args.max_degree)
    payload = {"involution": args.involution, "field": mode.field.name, "mode": mode.name,
               "max_degree": args.max_degree, "slices": rows}
    lines = [f"central space of (UT2, {args.involution}) over {mode.field.name} [{mode.name}]",
             f"{'slice':<16}{'dim':>5}{'Id':>5}{'C':>5}{'C/Id':>6}{'basis':>7}"]
    for r in rows:
        lines.append(f"{r['slice']:<16}{r['slice_dim']:>5}{r['identity_dim']:>5}{r['central_dim']:>5}"
                     f"{r['central_mod_identity']:>6}{r.get('basis_count', '-'):>7}")
    lines.append(f"{len(rows)} slices in {time.perf_counter() - t0:.2f}s")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def run_catalog_dump(args):
    field = get_field(args.field)
    entries = catalog.dump(q=field.q, p=field.p)
    payload = [{"id": tid, "citation": cite, "polynomials": texts} for tid, cite, texts in entries]
    lines = []
    for tid, cite, texts in entries:
        lines.append(f"{tid}  ({cite})")
        lines.extend(f"  {t}" for t in texts)
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


COMMANDS = {"check": run_check, "verify-theorem": run_verify, "central-space": run_central_space,
            "catalog-dump": run_catalog_dump}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except PolynomialSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, StarPIError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
