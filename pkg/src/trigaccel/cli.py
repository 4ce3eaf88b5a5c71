"""Command-line front end: ``trigaccel {sum,accelerate,estimate-r}``.

Exit codes: 0 success, 2 invalid input, 3 summation budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Optional, Sequence

from . import sequences
from .acceleration import RSelectionConfig, estimate_r_sequence
from .evaluation import AccelerationReport, BudgetExceeded, build_report, oracle_sum
from .operators import Kind, TrigPhase
from .transforms import SeriesSpec

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3

_PI_FORM = re.compile(
    r"^\s*(?P<num>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Decimal, or a rational multiple of pi such as ``3pi/4``, ``-pi/2``, ``2*pi``."""
    m = _PI_FORM.match(text)
    if m:
        num = m.group("num")
        if num in (None, "", "+"):
            coef = 1.0
        elif num == "-":
            coef = -1.0
        else:
            coef = float(num)
        den = float(m.group("den")) if m.group("den") else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return coef * math.pi / den
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {text!r}; use a decimal or a form like 3pi/4") from None
    if not math.isfinite(value):
        raise ValueError(f"angle must be finite, got {text!r}")
    return value


def _angle_arg(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("series")
    g.add_argument("--alpha", type=_angle_arg, default=1.0)
    g.add_argument("--beta", type=_angle_arg, default=0.0)
    g.add_argument("--x", type=_angle_arg, required=True, help="decimal or e.g. 3pi/4")
    g.add_argument("--kind", choices=["cos", "sin"], default="cos")
    g.add_argument("--family", choices=["two-exp", "geometric", "power", "file"], required=True)
    g.add_argument("--a", type=float, help="two-exp: a_n = 1/(a^n + b^n)")
    g.add_argument("--b", type=float)
    g.add_argument("--rho", type=float, help="geometric: a_n = rho^n")
    g.add_argument("--s", type=float, help="power: a_n = 1/n^s")
    g.add_argument("--path", help="file: one coefficient per line")
    o = common.add_argument_group("run")
    o.add_argument("--tol", type=float, default=1e-6)
    o.add_argument("--max-p", type=int, default=3)
    o.add_argument("--format", choices=["json", "csv"], default="json")

    parser = argparse.ArgumentParser(
        prog="trigaccel",
        description="Accelerated summation of trigonometric series sum a_n cos/sin((alpha n + beta) x).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_sum = sub.add_parser("sum", parents=[common], help="brute-force reference sum")
    p_sum.add_argument("--tail-bound", type=float, default=1e-14)
    sub.add_parser("accelerate", parents=[common], help="term counts per p against the direct sum")
    sub.add_parser("estimate-r", parents=[common], help="ratio-limit r sequence")
    return parser


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"--family {args.family} requires {', '.join(missing)}")


def coefficients_from_args(args) -> sequences.CoefficientSequence:
    if args.family == "two-exp":
        _require(args, "a", "b")
        if not (0 < args.a < args.b):
            raise ValueError(f"two-exp family requires 0 < a < b (got a={args.a:g}, b={args.b:g})")
        return sequences.two_exponential(args.a, args.b)
    if args.family == "geometric":
        _require(args, "rho")
        if not 0 < abs(args.rho) < 1:
            raise ValueError(f"geometric family requires 0 < |rho| < 1 (got {args.rho:g})")
        return sequences.geometric(args.rho)
    if args.family == "power":
        _require(args, "s")
        return sequences.power(args.s)
    _require(args, "path")
    try:
        return sequences.read_coefficient_file(args.path)
    except OSError as exc:
        raise ValueError(f"cannot read coefficient file: {exc}") from None


def series_from_args(args) -> SeriesSpec:
    if not (args.tol > 0):
        raise ValueError("--tol must be positive")
    if args.max_p < 0:
        raise ValueError("--max-p must be >= 0")
    phase = TrigPhase(args.alpha, args.beta, args.x)
    return SeriesSpec(coefficients_from_args(args), phase, Kind.parse(args.kind))


def number(z):
    """JSON form of a scalar: float, ``{"re", "im"}`` for complex, null for NaN."""
    if z is None:
        return None
    if isinstance(z, complex):
        if z.imag == 0:
            return number(z.real)
        return {"re": z.real, "im": z.imag}
    if isinstance(z, bool) or isinstance(z, int):
        return z
    z = float(z)
    return None if math.isnan(z) else z


def validation_to_dict(v) -> dict:
    return {
        "domain_ok": v.domain_ok,
        "r_positive_real": v.r_positive_real,
        "decay_condition": v.decay_condition.value,
        "lambda_hat": number(v.lambda_hat),
        "denominators_ok": v.denominators_ok,
        "notes": list(v.notes),
    }


def report_to_dict(report: AccelerationReport) -> dict:
    per_p = []
    for e in report.per_p:
        entry = {
            "p": e.p,
            "r": [number(v) for v in e.r],
            "remainder_terms": e.remainder_terms,
            "total_terms": e.total_terms,
            "head_count": e.head_count,
            "achieved_error": number(e.achieved_error),
        }
        if e.error:
            entry["error"] = e.error
        per_p.append(entry)
    sel = report.r_selection
    out = {
        "reference_sum": number(report.reference_sum),
        "reference_terms": report.reference_terms,
        "direct_terms": report.direct_terms_needed,
        "direct_error": number(report.direct_error),
        "tolerance": report.tolerance,
        "validation": validation_to_dict(report.validation),
        "r_selection": {
            "r": [number(v) for v in sel.values],
            "reason": sel.reason.value,
            "message": sel.message,
        },
        "per_p": per_p,
    }
    if report.sine_shift_discrepancy is not None:
        out["sine_shift_discrepancy"] = number(report.sine_shift_discrepancy)
    return out


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, dict):
        return f"{v['re']!r}{v['im']:+}j"
    return repr(v)


def report_to_csv(report: AccelerationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "r_values", "remainder_terms", "total_terms", "achieved_error"])
    for e in report_to_dict(report)["per_p"]:
        w.writerow([
            e["p"],
            ";".join(_fmt(v) for v in e["r"]),
            _fmt(e["remainder_terms"]),
            _fmt(e["total_terms"]),
            _fmt(e["achieved_error"]),
        ])
    return buf.getvalue()


def cmd_sum(args) -> dict:
    series = series_from_args(args)
    if not args.tail_bound > 0:
        raise ValueError("--tail-bound must be positive")
    value, terms = oracle_sum(series, args.tail_bound)
    return {"reference_sum": number(value), "reference_terms": terms, "tail_bound": args.tail_bound}


def cmd_accelerate(args) -> AccelerationReport:
    series = series_from_args(args)
    return build_report(series, RSelectionConfig(max_p=args.max_p), tol=args.tol, max_p=args.max_p)


def cmd_estimate_r(args) -> dict:
    series = series_from_args(args)
    sel = estimate_r_sequence(series.coefficients, RSelectionConfig(max_p=args.max_p))
    return {
        "r": [number(v) for v in sel.values],
        "reason": sel.reason.value,
        "deviations": list(sel.deviations),
        "message": sel.message,
    }


def _emit(payload, fmt: str, out) -> None:
    if isinstance(payload, AccelerationReport):
        if fmt == "csv":
            out.write(report_to_csv(payload))
            return
        payload = report_to_dict(payload)
    elif fmt == "csv":
        rows = payload.get("r")
        if rows is not None:
            out.write("index,r\n")
            for i, v in enumerate(rows, 1):
                out.write(f"{i},{_fmt(v)}\n")
            return
        out.write("reference_sum,reference_terms\n")
        out.write(f"{_fmt(payload['reference_sum'])},{payload['reference_terms']}\n")
        return
    json.dump(payload, out, indent=2, allow_nan=False)
    out.write("\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on malformed flags
    commands = {"sum": cmd_sum, "accelerate": cmd_accelerate, "estimate-r": cmd_estimate_r}
    try:
        payload = commands[args.command](args)
    except BudgetExceeded as exc:
        print(f"trigaccel: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"trigaccel: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(payload, args.format, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
