"""Command-line front end.

Exit codes: 0 success or match, 1 verified mismatch, 2 usage or parameter
error, 3 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .enumerator import (
    c1_case,
    c2_case,
    closed_form_cwe,
    code_dimension,
    collapse_to_weights,
    minimal_polynomial_dimension,
    normalize_code,
    run_oracle,
)
from .errors import BudgetExceeded, CweError, ParameterError
from .field import build_field
from .sums import (
    s_distribution,
    s_distribution_closed,
    t_distribution,
    t_distribution_closed,
)
from .sweep import DEFAULT_BUDGET, check_exponent
from .verify import verify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _poly(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_common(sp: argparse.ArgumentParser, need_l: bool = True, code: bool = False) -> None:
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--l", type=int, required=need_l)
    if code:
        sp.add_argument("--code", type=str.upper, choices=["C1", "C2"], required=True)
    sp.add_argument("--poly", type=_poly, default=None,
                    help="primitive polynomial override, constant term first, e.g. 2,0,1,1")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="maximum trace evaluations for an exhaustive sweep")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.add_argument("--out", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclocwe",
        description="Complete weight enumerators of two families of p-ary cyclic codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field-info", help="field descriptor and parity-check polynomial degrees")
    _add_common(sp, need_l=False)

    sp = sub.add_parser("sum-dist", help="value distribution of S(a) or T(a, b)")
    _add_common(sp)
    sp.add_argument("--sum", choices=["S", "T"], type=str.upper, default="S")
    sp.add_argument("--method", choices=["closed", "brute", "both"], default="both")

    sp = sub.add_parser("cwe", help="complete weight enumerator of C1 or C2")
    _add_common(sp, code=True)
    sp.add_argument("--method", choices=["closed", "brute", "both"], default="closed")

    sp = sub.add_parser("verify", help="closed forms against the exhaustive oracle")
    _add_common(sp, code=True)
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings")

    sp = sub.add_parser("sweep", help="verify a grid of parameters")
    sp.add_argument("--p", type=int, nargs="+", required=True)
    sp.add_argument("--m-min", type=int, default=2)
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("--code", type=str.upper, choices=["C1", "C2", "BOTH"], default="BOTH")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=["json", "text"], default="text")
    sp.add_argument("--out", default=None)
    return parser


# -- subcommands ------------------------------------------------------------------

def cmd_field_info(args) -> tuple[dict, str, int]:
    ctx = build_field(args.p, args.m, args.poly)
    h2 = ctx.minimal_polynomial(ctx.element(-2))
    report = {"field": ctx.descriptor(), "deg_h2": len(h2) - 1, "h2": list(h2)}
    lines = [f"F_{args.p}^{args.m}  primitive polynomial {list(ctx.prim_poly)} (constant term first)",
             f"deg(h2) = {len(h2) - 1}"]
    if args.l is not None:
        check_exponent(args.m, args.l)
        h1 = ctx.minimal_polynomial(ctx.element(-(args.p**args.l + 1)))
        report.update({
            "l": args.l,
            "deg_h1": len(h1) - 1,
            "h1": list(h1),
            "dim_C1": minimal_polynomial_dimension(ctx, args.l, "C1"),
            "dim_C2": minimal_polynomial_dimension(ctx, args.l, "C2"),
            "dim_C1_expected": code_dimension(args.m, args.l, "C1"),
            "dim_C2_expected": code_dimension(args.m, args.l, "C2"),
        })
        lines += [f"deg(h1) = {len(h1) - 1}",
                  f"dim C1 = {report['dim_C1']}, dim C2 = {report['dim_C2']}"]
    return report, "\n".join(lines), EXIT_OK


def cmd_sum_dist(args) -> tuple[dict, str, int]:
    closed_fn, direct_fn = (
        (s_distribution_closed, s_distribution) if args.sum == "S" else (t_distribution_closed, t_distribution)
    )
    report: dict = {"l": args.l}
    lines = []
    status = EXIT_OK
    closed = direct = None
    if args.method in ("closed", "both"):
        closed = closed_fn(args.p, args.m, args.l)
        report["closed"] = closed.to_json()
    if args.method in ("brute", "both"):
        ctx = build_field(args.p, args.m, args.poly)
        report["field"] = ctx.descriptor()
        direct = direct_fn(ctx, args.l, budget=args.budget, workers=args.workers)
        report["direct"] = direct.to_json()
    if closed is not None and direct is not None:
        report["match"] = closed == direct
        report["diff"] = direct.diff(closed)
        status = EXIT_OK if report["match"] else EXIT_MISMATCH
    shown = direct if direct is not None else closed
    lines.append(f"{args.sum} distribution, p={args.p} m={args.m} l={args.l}")
    lines.append(shown.to_text())
    if "match" in report:
        lines.append(f"direct == closed: {report['match']}")
    return report, "\n".join(lines), status


def cmd_cwe(args) -> tuple[dict, str, int]:
    check_exponent(args.m, args.l)
    report: dict = {}
    status = EXIT_OK
    closed = brute = None
    if args.method in ("closed", "both"):
        closed = closed_form_cwe(args.p, args.m, args.l, args.code)
        report["closed"] = closed.to_json()
    if args.method in ("brute", "both"):
        ctx = build_field(args.p, args.m, args.poly)
        report["field"] = ctx.descriptor()
        brute = run_oracle(ctx, args.l, args.code, budget=args.budget, workers=args.workers).table
        report["brute"] = brute.to_json()
    table = brute if brute is not None else closed
    report["case"] = c1_case(args.m, args.l) if args.code == "C1" else c2_case(args.m, args.l)
    weights = collapse_to_weights(table)
    report["weights"] = weights.to_json()
    lines = [f"{args.code} p={args.p} m={args.m} l={args.l}: [{table.length}, {table.dim}, {weights.min_distance}]",
             table.to_text()]
    if closed is not None and brute is not None:
        report["match"] = closed == brute
        report["diff"] = closed.diff(brute)
        lines.append(f"closed == brute: {report['match']}")
        status = EXIT_OK if report["match"] else EXIT_MISMATCH
    return report, "\n".join(lines), status


def _report_lines(rep) -> list[str]:
    lines = [f"{rep.code} p={rep.p} m={rep.m} l={rep.l} [{rep.case}] "
             f"{'match' if rep.match else 'MISMATCH'}"]
    for fix in rep.repairs:
        lines.append(f"  repair ({fix['case']}): {fix['printed']} -> {fix['repaired']}; "
                     f"printed matches oracle: {fix['printed_matches_oracle']}")
    lines += [f"  error: {e}" for e in rep.errors]
    return lines


def _verify_status(reports) -> int:
    if any(not r.match and not r.budget_exceeded for r in reports):
        return EXIT_MISMATCH
    if any(r.budget_exceeded for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> tuple[dict, str, int]:
    check_exponent(args.m, args.l)
    rep = verify(args.p, args.m, args.l, args.code, poly=args.poly,
                 budget=args.budget, workers=args.workers)
    return rep.to_json(timings=args.timings), "\n".join(_report_lines(rep)), _verify_status([rep])


def cmd_sweep(args) -> tuple[dict, str, int]:
    codes = ["C1", "C2"] if args.code == "BOTH" else [args.code]
    reports = []
    for p in args.p:
        for m in range(args.m_min, args.m_max + 1):
            for l in range(1, m):
                for code in codes:
                    reports.append(verify(p, m, l, code, budget=args.budget, workers=args.workers))
    summary = [
        {"code": r.code, "p": r.p, "m": r.m, "l": r.l, "case": r.case, "match": r.match,
         "budget_exceeded": r.budget_exceeded, "repairs": len(r.repairs), "errors": r.errors}
        for r in reports
    ]
    lines = [line for r in reports for line in _report_lines(r)]
    return {"runs": summary}, "\n".join(lines), _verify_status(reports)


COMMANDS = {
    "field-info": cmd_field_info,
    "sum-dist": cmd_sum_dist,
    "cwe": cmd_cwe,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "code") and args.code in ("C1", "C2"):
        args.code = normalize_code(args.code)
    try:
        report, text, status = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ParameterError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CweError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH

    output = json.dumps(report, indent=2) if args.format == "json" else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
