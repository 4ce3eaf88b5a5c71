"""Ratio-limit selection of r, the infinite transform, and hypothesis checks.

Choosing r_1 = lim a_{n+1}/a_n and r_{p+1} = lim L_{r_1..r_p}(a_{n+1}) / L_{r_1..r_p}(a_n)
makes every stage's coefficients negligible relative to the previous stage.
The limits are estimated numerically by probing the ratio sequence at
growing indices in mpmath arithmetic.  The difference operators cancel
catastrophically (stage p loses roughly p*n*log10(b/a) digits for the
1/(a^n+b^n) family), so double precision is not enough past p = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath as mp
import numpy as np

from .operators import RSequence, as_rsequence
from .sequences import CoefficientSequence
from .summation import CompensatedSum, real_if_close
from .transforms import SeriesSpec, denominator, denominators, head_term

# growth factor of the probe-window grid
_GRID_FACTOR = 1.5
# a window this much worse than the best one so far means we left the plateau
_PLATEAU_EXIT = 1e3
DECAY_MARGIN = 0.05


@dataclass(frozen=True)
class RSelectionConfig:
    max_p: int = 3
    ratio_probe_start: int = 30
    ratio_probe_count: int = 10
    stagnation_tol: float = 1e-9
    max_probe_index: int = 200_000
    working_digits: int = 150
    refinement_sweeps: int = 3

    def __post_init__(self):
        if self.max_p < 0:
            raise ValueError("max_p must be >= 0")
        if self.ratio_probe_start < 1 or self.ratio_probe_count < 4:
            raise ValueError("probe start must be >= 1 and probe count >= 4")
        if not self.stagnation_tol > 0:
            raise ValueError("stagnation_tol must be positive")
        if self.max_probe_index < self.ratio_probe_start:
            raise ValueError("max_probe_index must be >= ratio_probe_start")
        if self.working_digits < 20:
            raise ValueError("working_digits must be >= 20")


class RatioDivergent(ArithmeticError):
    """The probed ratios never settled to within the stagnation tolerance."""

    def __init__(self, message: str, best: Optional["RatioEstimate"] = None):
        super().__init__(message)
        self.best = best


class ZeroDenominator(ArithmeticError):
    """L_{r_so_far}(a_n) vanishes (to working precision) at the probe indices."""


@dataclass(frozen=True)
class RatioEstimate:
    value: object  # mpmath number at working precision
    deviation: float  # largest relative step between successive probe ratios
    probe_index: int  # index of the last ratio used


def _mp_weights(r_values) -> list:
    # same canonical order as operators.elementary_symmetric
    ordered = sorted(r_values, key=lambda z: (float(mp.re(z)), float(mp.im(z))))
    e = [mp.mpf(1)]
    for rj in ordered:
        e.append(mp.mpf(0))
        for k in range(len(e) - 1, 0, -1):
            e[k] = e[k] + rj * e[k - 1]
    return [(-1) ** k * ek for k, ek in enumerate(e)]


def _to_mp(z):
    z = complex(z)
    return mp.mpf(z.real) if z.imag == 0 else mp.mpc(z.real, z.imag)


def _aitken(seq):
    """Aitken delta-squared; falls back to the raw value where the second difference vanishes."""
    out = []
    for i in range(len(seq) - 2):
        d1 = seq[i + 1] - seq[i]
        d2 = seq[i + 2] - 2 * seq[i + 1] + seq[i]
        if d2 == 0 or abs(d2) <= abs(d1) * mp.eps * 1e6:
            out.append(seq[i + 2])
        else:
            out.append(seq[i + 2] - (seq[i + 2] - seq[i + 1]) ** 2 / d2)
    return out


def _probe_ratio_limit(a: CoefficientSequence, r_values, cfg: RSelectionConfig) -> RatioEstimate:
    """Locate the plateau of L(a_{n+1})/L(a_n) over a geometric grid of windows."""
    p = len(r_values)
    count = cfg.ratio_probe_count
    digits = a.digits or cfg.working_digits
    floor = mp.mpf(10) ** -(digits - max(3, digits // 8))

    last_start = cfg.max_probe_index
    start = cfg.ratio_probe_start
    if a.length is not None:
        last_start = min(last_start, a.length - count - p)
        start = min(start, last_start)
        if start < 1:
            raise RatioDivergent(
                f"{a.name}: {a.length} coefficients are too few to probe ratios at stage {p + 1}"
            )

    weights = _mp_weights(r_values)

    def L(m):
        terms = [w * a.precise(m + p - k) for k, w in enumerate(weights)]
        total = mp.fsum(terms)
        scale = max(abs(t) for t in terms)
        return total, (abs(total) / scale if scale else mp.mpf(0))

    best: Optional[RatioEstimate] = None
    n, first = start, True
    while n <= last_start:
        vals = [L(m) for m in range(n, n + count + 1)]
        if min(rel for _, rel in vals) < floor:
            if first:
                raise ZeroDenominator(
                    f"{a.name}: L values vanish at probe indices {n}..{n + count} (stage {p + 1})"
                )
            break  # deeper windows only see rounding noise
        first = False
        ratios = _aitken([vals[i + 1][0] / vals[i][0] for i in range(count)])
        scale = max(1, abs(ratios[-1]))
        dev = float(max(abs(ratios[i + 1] - ratios[i]) for i in range(len(ratios) - 1)) / scale)
        if best is None or dev < best.deviation:
            best = RatioEstimate(ratios[-1], dev, n + count - 1)
        elif dev > _PLATEAU_EXIT * best.deviation and best.deviation < 1e-2:
            break
        n = max(n + 1, int(n * _GRID_FACTOR))
    if best is None:
        raise RatioDivergent(f"{a.name}: no usable probe window at stage {p + 1}")
    if not best.deviation < cfg.stagnation_tol:
        raise RatioDivergent(
            f"{a.name}: probe ratios at stage {p + 1} did not stagnate "
            f"(best step {best.deviation:.3g} > {cfg.stagnation_tol:g})",
            best,
        )
    return best


def estimate_r_next(a: CoefficientSequence, r_so_far=(), cfg: RSelectionConfig = RSelectionConfig()):
    """Estimated lim L_{r_so_far}(a_{n+1}) / L_{r_so_far}(a_n) (plain ratio if r_so_far is empty).

    ``r_so_far`` is taken at face value.  Any rounding in it leaves a trace of
    the mode it was meant to cancel, and that trace eventually dominates the
    ratio; with double-precision inputs this caps usable depth at about two
    stages.  :func:`estimate_r_sequence` keeps full precision between stages.
    """
    with mp.workdps(cfg.working_digits):
        r_mp = [_to_mp(v) for v in r_so_far]
        est = _probe_ratio_limit(a, r_mp, cfg)
        return real_if_close(complex(est.value))


class StopReason(str, enum.Enum):
    MAX_P = "max_p"
    ANNIHILATED = "annihilated"
    RATIO_DIVERGENT = "ratio-divergent"


@dataclass(frozen=True)
class RSelection:
    """Outcome of ratio-limit selection: the r values and why selection stopped."""

    values: tuple
    reason: StopReason
    deviations: tuple = ()
    message: str = ""

    def __len__(self):
        return len(self.values)

    @property
    def r(self) -> RSequence:
        return RSequence(self.values)

    def padded(self, p: int) -> RSequence:
        """r extended to length p with zeros; only meaningful after annihilation,
        where any further factor keeps the remainder at zero."""
        vals = list(self.values) + [0.0] * max(0, p - len(self.values))
        return RSequence(tuple(vals[:p]))


def estimate_r_sequence(a: CoefficientSequence, cfg: RSelectionConfig = RSelectionConfig()) -> RSelection:
    """r_1..r_{max_p} by repeated ratio-limit estimation.

    A greedy pass estimates each r_{p+1} from L_{r_1..r_p}.  Because the
    factors of L commute, r_k is also the ratio limit of L applied with all
    the other parameters, and that ratio converges much faster once the
    later modes are removed; a few such sweeps clean up the error that an
    inexact r_1 otherwise feeds into every later stage.
    """
    with mp.workdps(cfg.working_digits):
        values: list = []
        devs: list = []
        reason, message = StopReason.MAX_P, ""
        for _ in range(cfg.max_p):
            try:
                est = _probe_ratio_limit(a, values, cfg)
            except ZeroDenominator as exc:
                reason, message = StopReason.ANNIHILATED, str(exc)
                break
            except RatioDivergent as exc:
                if exc.best is None:
                    reason, message = StopReason.RATIO_DIVERGENT, str(exc)
                    break
                est = exc.best  # provisional; the sweeps may still fix it
            values.append(est.value)
            devs.append(est.deviation)

        for _ in range(cfg.refinement_sweeps if len(values) > 1 else 0):
            change = 0.0
            for k in range(len(values)):
                others = values[:k] + values[k + 1:]
                try:
                    est = _probe_ratio_limit(a, others, cfg)
                except RatioDivergent as exc:
                    if exc.best is None:
                        continue
                    est = exc.best
                except ZeroDenominator:
                    continue
                change = max(change, float(abs(est.value - values[k]) / max(1, abs(values[k]))))
                values[k] = est.value
                devs[k] = est.deviation
            if change < cfg.stagnation_tol * 1e-3:
                break

        for k, dev in enumerate(devs):
            if not dev < cfg.stagnation_tol:
                reason = StopReason.RATIO_DIVERGENT
                message = (
                    f"{a.name}: ratio at stage {k + 1} did not stagnate "
                    f"(best step {dev:.3g} > {cfg.stagnation_tol:g})"
                )
                values, devs = values[:k], devs[:k]
                break

        return RSelection(
            values=tuple(real_if_close(complex(v)) for v in values),
            reason=reason,
            deviations=tuple(devs),
            message=message,
        )


class DecayCondition(str, enum.Enum):
    DECAYS = "decays"
    GROWS = "grows"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ValidationReport:
    domain_ok: bool
    r_positive_real: bool
    decay_condition: DecayCondition
    lambda_hat: float
    denominators_ok: bool
    notes: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return (
            self.domain_ok
            and self.r_positive_real
            and self.decay_condition is not DecayCondition.INDETERMINATE
            and self.denominators_ok
        )


def _linear_fit(x, y) -> tuple[float, float]:
    coef, resid, *_ = np.polyfit(x, y, 1, full=True)
    return float(coef[0]), float(resid[0]) if len(resid) else 0.0


def fit_decay(r_values, margin: float = DECAY_MARGIN) -> tuple[DecayCondition, float]:
    """Classify r_n = O(n^-lambda) or 1/r_n = O(n^-lambda) from a finite prefix.

    The primary statistic is the least-squares slope of log r_n against
    log n.  When log r_n is fitted better by a straight line in n itself the
    prefix looks geometric; its log-log slope then keeps steepening, and the
    reported exponent is the local one at the end of the window.
    """
    r = [complex(v) for v in r_values]
    if len(r) < 2 or not all(v.imag == 0 and v.real > 0 for v in r):
        return DecayCondition.INDETERMINATE, math.nan
    n = np.arange(1, len(r) + 1, dtype=float)
    logr = np.log(np.array([v.real for v in r]))
    slope, resid_power = _linear_fit(np.log(n), logr)
    geo_slope, resid_geo = _linear_fit(n, logr)
    if len(r) > 2 and resid_geo < resid_power and geo_slope != 0:
        slope = geo_slope * float(n[-1])
    if slope <= -(1 + margin):
        return DecayCondition.DECAYS, -slope
    if slope >= 1 + margin:
        return DecayCondition.GROWS, slope
    return DecayCondition.INDETERMINATE, abs(slope)


def validate_theorem2(series: SeriesSpec, r, probe_len: Optional[int] = None) -> ValidationReport:
    """Numerical evidence for the hypotheses of the infinite transform.

    Never raises: a hypothesis that cannot be checked is reported as failed
    or indeterminate with a note.
    """
    notes = []
    vals = list(r.values if isinstance(r, RSequence) else r)
    if probe_len is None:
        probe_len = len(vals)
    if probe_len < 4:
        notes.append(f"probe_len {probe_len} < 4; decay check skipped")
    if len(vals) < probe_len:
        notes.append(f"only {len(vals)} r values available for probe_len {probe_len}")
    probe = [complex(v) for v in vals[:probe_len]]

    phase = series.phase
    angle = abs(phase.alpha) * phase.x
    domain_ok = math.pi / 2 <= angle <= 3 * math.pi / 2
    positive = bool(probe) and all(v.imag == 0 and v.real > 0 for v in probe)
    if probe_len >= 4 and len(probe) >= 4:
        condition, lam = fit_decay(probe)
    else:
        condition, lam = DecayCondition.INDETERMINATE, math.nan
    dens_ok = bool(probe) and all(abs(denominator(v, phase)) > 1 for v in probe)
    return ValidationReport(domain_ok, positive, condition, lam, dens_ok, tuple(notes))


def euler_term(series: SeriesSpec, r, k: int):
    """k-th term of the infinite transform; needs r_1..r_{k+1}."""
    return head_term(series, as_rsequence(r), k)


def euler_partial_sum(series: SeriesSpec, r, K: int):
    """Sum of the first K terms (k = 0..K-1) of the infinite transform."""
    r = as_rsequence(r)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if len(r) < K:
        raise ValueError(f"{K} terms need {K} r values, have {len(r)}")
    dens = denominators(r.prefix(K), series.phase)
    return CompensatedSum(head_term(series, r, k, dens) for k in range(K)).result()


__all__ = [
    "DecayCondition",
    "RSelection",
    "RSelectionConfig",
    "RatioDivergent",
    "RatioEstimate",
    "StopReason",
    "ValidationReport",
    "ZeroDenominator",
    "estimate_r_next",
    "estimate_r_sequence",
    "euler_partial_sum",
    "euler_term",
    "fit_decay",
    "validate_theorem2",
]
