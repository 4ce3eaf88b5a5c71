#!/usr/bin/env python3
"""Term counts for sum cos(n x)/(a^n + b^n): direct summation versus p = 1..P.

Run:  python3 scripts/reproduce_example.py --a 2 --b 3 --x 3pi/4 --tol 1e-6
"""

import argparse
import time

from trigaccel import RSelectionConfig, SeriesSpec, TrigPhase, build_report, two_exponential
from trigaccel.cli import parse_angle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=2.0)
    ap.add_argument("--b", type=float, default=3.0)
    ap.add_argument("--x", type=parse_angle, default=parse_angle("3pi/4"))
    ap.add_argument("--tol", type=float, default=1e-6)
    ap.add_argument("--max-p", type=int, default=3)
    args = ap.parse_args()

    series = SeriesSpec(two_exponential(args.a, args.b), TrigPhase(1.0, 0.0, args.x))
    start = time.perf_counter()
    report = build_report(series, RSelectionConfig(max_p=args.max_p), tol=args.tol)
    elapsed = time.perf_counter() - start

    print(f"reference sum    {report.reference_sum:.16f}  ({report.reference_terms} terms)")
    print(f"direct           {report.direct_terms_needed:4d} terms  error {report.direct_error:.2e}")
    print(f"{'p':>3} {'remainder':>9} {'total':>6} {'error':>9}  r")
    for e in report.per_p:
        if not e.ok:
            print(f"{e.p:>3} {e.error}")
            continue
        r = ", ".join(f"{complex(v).real:.6g}" for v in e.r)
        print(f"{e.p:>3} {e.remainder_terms:>9} {e.total_terms:>6} {e.achieved_error:9.2e}  [{r}]")
    v = report.validation
    print(f"decay condition: {v.decay_condition.value} (lambda_hat={v.lambda_hat:.3g}); all checks ok: {v.ok}")
    print(f"elapsed {elapsed:.3f} s")


if __name__ == "__main__":
    main()
