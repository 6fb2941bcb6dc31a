"""Command-line front end.

Subcommands reproduce the bound tables and sharpness figures, run the
verification suites and emit machine-readable reports:

    subord constants    kernel integral constants L, U, I_minus, I_plus
    subord table        all registry cases with closed-form and quoted bounds
    subord verify       containment certificate for one case at a given beta
    subord sharpness    Violated / Binding / Contained bracket at the sharp bound
    subord plot         boundary curves as CSV (+ rendered PNG) or minimal SVG
    subord check-class  subclass membership of a polynomial function
    subord corollary    membership corollary check for a polynomial function

Exit codes: 0 expected verdict, 1 verification failure, 2 usage/input error.
Every command is deterministic for fixed flags.  The environment variable
SUBORD_TOL overrides the default quadrature tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

import numpy as np

from subord import bounds, quadrature, starlike, subordination
from subord.functions import FUNCTION_IDS, UnknownFunctionError, target_boundary
from subord.plotting import render_curves_png, render_curves_svg
from subord.subordination import Containment

__all__ = ["main"]

_EXIT_OK = 0
_EXIT_FAIL = 1
_EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def _report_record(command: str, inputs: dict, outputs: dict, verdicts: dict, started: float) -> dict:
    """Serializable report with stable field ordering."""
    return {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "verdicts": verdicts,
        "timings": {"elapsed_s": round(time.perf_counter() - started, 6)},
    }


def _get_case(args) -> bounds.SubordinationCase:
    try:
        return bounds.get_case(args.theorem, args.case)
    except KeyError as exc:
        raise _UsageError(str(exc)) from None


def _parse_coeffs(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise _UsageError(f"bad coefficient list: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_constants(args) -> int:
    consts = quadrature.integral_constants(args.tol)
    if args.format == "json":
        payload = {
            name: {"value": c.value, "est_error": c.est_error}
            for name, c in consts.items()
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["name", "value", "est_error"])
        for name, c in consts.items():
            writer.writerow([name, f"{c.value:.15g}", f"{c.est_error:.3g}"])
    else:
        for name, c in consts.items():
            print(f"{name:8s} = {c.value:.12f}   (est_error {c.est_error:.2e})")
    return _EXIT_OK


def _table_rows(args) -> list[dict]:
    cases = bounds.list_cases(args.tol)
    if args.theorem is not None:
        if args.theorem not in bounds.THEOREMS:
            raise _UsageError(f"unknown theorem id {args.theorem!r}")
        cases = tuple(c for c in cases if c.theorem == args.theorem)
    rows = []
    for c in cases:
        row = {
            "theorem": c.theorem,
            "case": c.case,
            "family": c.family.value,
            "source": c.source,
            "target": c.target,
            "beta1": c.beta1,
            "beta2": c.beta2,
            "beta_sharp": c.beta_sharp,
            "reference": c.approx,
            "delta": c.delta_vs_approx,
            "flag": "" if c.matches_approx else "MISMATCH",
        }
        if args.verify:
            b = bounds.min_beta_bisection(c, tol=1e-10)
            row["bisection"] = b
            row["bisect_delta"] = abs(b - c.beta_sharp)
        rows.append(row)
    return rows


def _cmd_table(args) -> int:
    rows = _table_rows(args)
    fields = list(rows[0].keys())
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: f"{v:.12g}" if isinstance(v, float) else v for k, v in row.items()})
    else:  # markdown
        header = "| " + " | ".join(fields) + " |"
        print(header)
        print("|" + "|".join("---" for _ in fields) + "|")
        for row in rows:
            cells = [f"{v:.9g}" if isinstance(v, float) else str(v) for v in row.values()]
            print("| " + " | ".join(cells) + " |")
    mismatches = [r for r in rows if r["flag"]]
    if mismatches:
        print(
            f"# {len(mismatches)} case(s) deviate from the quoted decimals by more "
            "than one unit in the last digit (see delta column)",
            file=sys.stderr,
        )
        return _EXIT_FAIL
    return _EXIT_OK


def _cmd_verify(args) -> int:
    started = time.perf_counter()
    case = _get_case(args)
    report = subordination.verify_containment(
        case, args.beta, n=args.samples, delta=args.margin
    )
    record = _report_record(
        "verify",
        {
            "theorem": case.theorem, "case": case.case, "beta": args.beta,
            "samples": args.samples, "margin": args.margin,
        },
        {
            "endpoint_gap_plus": report.endpoint_gap_plus,
            "endpoint_gap_minus": report.endpoint_gap_minus,
            "worst_theta": report.worst_theta,
            "worst_margin": report.worst_margin,
            "note": report.note,
        },
        {"containment": report.verdict.value},
        started,
    )
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print(f"{case.case_id} at beta={args.beta:g}: {report.verdict.value}")
        print(f"  endpoint gaps: plus={report.endpoint_gap_plus:.3e} minus={report.endpoint_gap_minus:.3e}")
        print(f"  worst sample margin {report.worst_margin:.3e} at theta={report.worst_theta:.6f}")
        if report.note:
            print(f"  note: {report.note}")
    return _EXIT_OK if report.verdict is not Containment.VIOLATED else _EXIT_FAIL


def _cmd_sharpness(args) -> int:
    started = time.perf_counter()
    case = _get_case(args)
    probe = subordination.sharpness_probe(case, epsilon=args.epsilon, n=args.samples)
    record = _report_record(
        "sharpness",
        {"theorem": case.theorem, "case": case.case, "epsilon": args.epsilon, "samples": args.samples},
        {"beta_sharp": probe.beta_sharp, "binding_side": probe.binding_side},
        {
            "below": probe.below.value, "at": probe.at.value, "above": probe.above.value,
            "ok": probe.ok,
        },
        started,
    )
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print(
            f"{case.case_id}: beta*={probe.beta_sharp:.9f} "
            f"({probe.below.value}, {probe.at.value}, {probe.above.value}) "
            f"binding side {probe.binding_side}"
        )
        if not probe.ok:
            print("  sharpness bracketing FAILED (expected violated/binding/contained)")
    return _EXIT_OK if probe.ok else _EXIT_FAIL


def _cmd_plot(args) -> int:
    case = _get_case(args)
    n = args.samples
    q_curve = subordination.dominant_boundary(case.family, case.source, args.beta, n)
    t_curve = target_boundary(case.target, n)
    title = f"{case.case_id}: dominant at beta={args.beta:g} vs {case.target}"
    if args.format == "svg":
        render_curves_svg(q_curve.points, t_curve.points, title, args.out)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["curve", "theta", "re", "im"])
            for theta, p in zip(q_curve.params, q_curve.points):
                writer.writerow([
                    "q", f"{theta:.12g}", f"{p.real:.15g}", f"{p.imag:.15g}",
                ])
            for theta, p in zip(t_curve.params, t_curve.points):
                writer.writerow([
                    "target", f"{theta:.12g}", f"{p.real:.15g}", f"{p.imag:.15g}",
                ])
        if not args.no_fig:
            png_path = args.out.rsplit(".", 1)[0] + ".png"
            render_curves_png(q_curve.points, t_curve.points, title, png_path)
    print(f"wrote {args.out}")
    return _EXIT_OK


def _cmd_check_class(args) -> int:
    started = time.perf_counter()
    if args.klass not in FUNCTION_IDS:
        raise _UsageError(f"unknown class id {args.klass!r}; choose from {FUNCTION_IDS}")
    coeffs = _parse_coeffs(args.coeffs)
    try:
        report = starlike.class_membership(
            coeffs, args.klass, r_max=args.r, n=args.samples
        )
    except starlike.FunctionSingularityError as exc:
        raise _UsageError(f"singularity: {exc}") from None
    record = _report_record(
        "check-class",
        {"coeffs": [str(c) for c in coeffs], "class": args.klass, "r": args.r, "samples": args.samples},
        {
            "worst_margin": report.worst_margin,
            "worst_z": str(report.worst_z),
            "worst_value": str(report.worst_value),
        },
        {"member": report.member},
        started,
    )
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        state = "member" if report.member else "NOT a member"
        print(f"f is {state} of the {args.klass} subclass up to r={args.r:g}")
        print(f"  worst margin {report.worst_margin:.3e} at z={report.worst_z:.6f}")
    return _EXIT_OK if report.member else _EXIT_FAIL


def _cmd_corollary(args) -> int:
    started = time.perf_counter()
    case = _get_case(args)
    coeffs = _parse_coeffs(args.coeffs)
    beta = case.beta_sharp if args.beta is None else args.beta
    try:
        report = starlike.corollary_check(coeffs, beta, case, r_max=args.r, n=args.samples)
    except starlike.FunctionSingularityError as exc:
        raise _UsageError(f"singularity: {exc}") from None
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    record = _report_record(
        "corollary",
        {
            "coeffs": [str(c) for c in coeffs], "theorem": case.theorem,
            "case": case.case, "beta": beta, "r": args.r,
        },
        {
            "hyp_worst_margin": report.hyp_worst_margin,
            "conc_worst_margin": report.conc_worst_margin,
        },
        {
            "hypothesis_holds": report.hypothesis_holds,
            "conclusion_holds": report.conclusion_holds,
            "consistent": report.consistent,
        },
        started,
    )
    if args.json:
        print(json.dumps(record, indent=2))
    else:
        print(
            f"{case.case_id} at beta={beta:g}: hypothesis "
            f"{'holds' if report.hypothesis_holds else 'fails'}, conclusion "
            f"{'holds' if report.conclusion_holds else 'fails'}"
        )
        if not report.consistent:
            print("  COROLLARY VIOLATED: hypothesis holds but conclusion fails")
    return _EXIT_OK if report.consistent else _EXIT_FAIL


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subord",
        description="sharp differential-subordination bounds and their numerical certification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="kernel integral constants")
    p.add_argument("--tol", type=float, default=quadrature.DEFAULT_TOL)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("table", help="registry of sharp bounds")
    p.add_argument("--theorem", default=None, help="restrict to one theorem id (T1..T9)")
    p.add_argument("--format", choices=["md", "csv", "json"], default="md")
    p.add_argument("--verify", action="store_true", help="append the bisection oracle column")
    p.add_argument("--tol", type=float, default=quadrature.DEFAULT_TOL)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", help="containment certificate for one case")
    p.add_argument("--theorem", required=True)
    p.add_argument("--case", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--margin", type=float, default=1e-7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sharpness", help="bracket the sharp bound of one case")
    p.add_argument("--theorem", required=True)
    p.add_argument("--case", required=True)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sharpness)

    p = sub.add_parser("plot", help="emit dominant and target boundary curves")
    p.add_argument("--theorem", required=True)
    p.add_argument("--case", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--no-fig", action="store_true", help="skip the rendered PNG next to the CSV")
    p.set_defaults(func=_cmd_plot)

    p = sub.add_parser("check-class", help="subclass membership of a polynomial f")
    p.add_argument("--coeffs", required=True, help="comma-separated a_2,a_3,...")
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--r", type=float, default=0.999)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check_class)

    p = sub.add_parser("corollary", help="membership corollary check for a polynomial f")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--theorem", required=True)
    p.add_argument("--case", required=True)
    p.add_argument("--beta", type=float, default=None, help="defaults to the case's sharp bound")
    p.add_argument("--r", type=float, default=0.999)
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_corollary)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_USAGE if exc.code not in (0, None) else _EXIT_OK
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (UnknownFunctionError, ValueError, subordination.DominantSingularityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
