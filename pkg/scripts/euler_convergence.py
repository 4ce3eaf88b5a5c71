#!/usr/bin/env python3
"""Error of the infinite (Euler-type) transform versus the number K of head terms.

Compares the closed-form r sequence r_n = a^(n-1)/b^n with the one estimated
from ratio limits.  Run:  python3 scripts/euler_convergence.py --kmax 12
"""

import argparse
import math

from trigaccel import (
    RSelectionConfig,
    SeriesSpec,
    TrigPhase,
    estimate_r_sequence,
    euler_partial_sum,
    oracle_sum,
    two_exponential,
)
from trigaccel.cli import parse_angle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=2.0)
    ap.add_argument("--b", type=float, default=3.0)
    ap.add_argument("--x", type=parse_angle, default=parse_angle("3pi/4"))
    ap.add_argument("--kmax", type=int, default=12)
    args = ap.parse_args()

    series = SeriesSpec(two_exponential(args.a, args.b), TrigPhase(1.0, 0.0, args.x))
    reference, _ = oracle_sum(series, 1e-16)
    exact_r = [args.a ** (n - 1) / args.b**n for n in range(1, args.kmax + 1)]
    sel = estimate_r_sequence(series.coefficients, RSelectionConfig(max_p=args.kmax))
    est_r = [complex(v).real for v in sel.values]

    print(f"{'K':>3} {'closed-form r':>14} {'estimated r':>14}")
    for K in range(1, args.kmax + 1):
        e1 = abs(euler_partial_sum(series, exact_r[:K], K) - reference)
        e2 = abs(euler_partial_sum(series, est_r[:K], K) - reference) if K <= len(est_r) else math.nan
        print(f"{K:>3} {e1:14.3e} {e2:14.3e}")
    print(f"estimator stop: {sel.reason.value} after {len(est_r)} values")


if __name__ == "__main__":
    main()
