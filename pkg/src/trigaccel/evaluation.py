"""Reference sums, terms-to-tolerance counts and acceleration reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .acceleration import (
    RSelection,
    RSelectionConfig,
    StopReason,
    ValidationReport,
    estimate_r_sequence,
    validate_theorem2,
)
from .operators import Kind, as_rsequence
from .summation import CompensatedSum
from .transforms import DenominatorNearZero, SeriesSpec, transform, transformed_partial_sum

ORACLE_BUDGET = 10**6
COUNT_BUDGET = 10**5
# quiet-run length of the default oracle stopping rule
ORACLE_QUIET_RUN = 30
# reference sums are certified two orders below what they are used to measure
REFERENCE_TAIL_FACTOR = 1e-4
MIN_VALIDATION_PROBES = 4


class BudgetExceeded(RuntimeError):
    """A summation loop hit its term budget without meeting its stopping rule."""


def oracle_sum(series: SeriesSpec, tail_bound: float, *, budget: int = ORACLE_BUDGET):
    """Brute-force compensated sum of the original series.

    Returns ``(value, terms_used)``.  If the coefficient sequence knows a tail
    index (``sum_{n>N}|a_n| <= bound``) that is used directly; otherwise
    summation continues until 30 consecutive coefficients are below
    ``tail_bound/100`` and then 30 terms more.
    """
    if not tail_bound > 0:
        raise ValueError("tail_bound must be positive")
    a = series.coefficients
    stop: Optional[int] = None
    if a.tail_index is not None:
        stop = a.tail_index(tail_bound)
        if stop is not None and stop > budget:
            raise BudgetExceeded(f"tail bound {tail_bound:g} needs {stop} terms (> {budget})")
    acc = CompensatedSum()
    quiet = 0
    n = 0
    while True:
        n += 1
        if n > budget:
            raise BudgetExceeded(
                f"{a.name}: no {ORACLE_QUIET_RUN}-term quiet run below {tail_bound / 100:g} "
                f"within {budget} terms"
            )
        acc.add(series.term(n))
        if stop is not None:
            if n >= stop:
                break
            continue
        quiet = quiet + 1 if abs(a(n)) < tail_bound / 100 else 0
        if quiet >= ORACLE_QUIET_RUN:
            for _ in range(ORACLE_QUIET_RUN):
                n += 1
                acc.add(series.term(n))
            break
    return acc.result(), n


def terms_to_tolerance_direct(series: SeriesSpec, tol: float, reference, *, budget: int = COUNT_BUDGET) -> int:
    """Smallest N >= 1 whose direct partial sum is within ``tol`` of ``reference``."""
    acc = CompensatedSum()
    for n in range(1, budget + 1):
        acc.add(series.term(n))
        if abs(acc.value - reference) <= tol:
            return n
    raise BudgetExceeded(f"direct partial sums not within {tol:g} after {budget} terms")


def terms_to_tolerance_transformed(series: SeriesSpec, r, tol: float, reference, *, budget: int = COUNT_BUDGET):
    """Smallest remainder count N reaching ``tol``; returns ``(N, N + p)``.

    The scan is linear from N = 0 because the transformed error is not
    monotone term by term.
    """
    t = transform(series, r)
    for n, s in enumerate(t.partial_sums()):
        if abs(s - reference) <= tol:
            return n, n + t.p
        if n >= budget:
            break
    raise BudgetExceeded(f"transformed partial sums (p={t.p}) not within {tol:g} after {budget} terms")


@dataclass
class PEntry:
    p: int
    r: list
    remainder_terms: Optional[int] = None
    total_terms: Optional[int] = None
    achieved_error: Optional[float] = None
    error: Optional[str] = None

    @property
    def head_count(self) -> int:
        return self.p

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass
class AccelerationReport:
    reference_sum: object
    reference_terms: int
    direct_terms_needed: int
    tolerance: float
    validation: ValidationReport
    r_selection: RSelection
    per_p: list = field(default_factory=list)
    direct_error: Optional[float] = None
    sine_shift_discrepancy: Optional[float] = None

    def counts(self, convention: str = "remainder") -> list:
        key = {"remainder": "remainder_terms", "total": "total_terms"}[convention]
        return [getattr(e, key) for e in self.per_p]


def _entry(series, r, p, tol, reference) -> PEntry:
    entry = PEntry(p=p, r=as_rsequence(r).as_python())
    try:
        n, total = terms_to_tolerance_transformed(series, r, tol, reference)
    except (DenominatorNearZero, BudgetExceeded) as exc:
        entry.error = f"{type(exc).__name__}: {exc}"
        return entry
    t = transform(series, r)
    entry.remainder_terms = n
    entry.total_terms = total
    entry.achieved_error = abs(transformed_partial_sum(t, n) - reference)
    return entry


def build_report(
    series: SeriesSpec,
    cfg: RSelectionConfig = RSelectionConfig(),
    tol: float = 1e-6,
    max_p: Optional[int] = None,
    reference=None,
) -> AccelerationReport:
    """Oracle, r selection, validation and term counts for p = 1..max_p.

    ``reference`` replaces the brute-force oracle for series whose
    coefficients are not absolutely summable (reported with 0 reference
    terms).  The r sequence is estimated to at least four entries so the
    decay hypothesis can be checked even for small ``max_p``.  Entries that
    cannot be computed carry their cause in ``error`` instead of aborting.
    """
    if max_p is None:
        max_p = cfg.max_p
    if reference is None:
        reference, ref_terms = oracle_sum(series, tol * REFERENCE_TAIL_FACTOR)
    else:
        ref_terms = 0
    direct = terms_to_tolerance_direct(series, tol, reference)
    direct_acc = CompensatedSum(series.term(n) for n in range(1, direct + 1))

    selection = estimate_r_sequence(
        series.coefficients, replace(cfg, max_p=max(max_p, MIN_VALIDATION_PROBES))
    )
    probe = list(selection.values)
    if selection.reason is StopReason.ANNIHILATED and probe:
        probe = list(selection.padded(max(len(probe), MIN_VALIDATION_PROBES)))
    validation = validate_theorem2(series, probe, probe_len=max(len(probe), MIN_VALIDATION_PROBES))

    report = AccelerationReport(
        reference_sum=reference,
        reference_terms=ref_terms,
        direct_terms_needed=direct,
        tolerance=tol,
        validation=validation,
        r_selection=selection,
        direct_error=abs(direct_acc.value - reference),
    )

    annihilated = selection.reason is StopReason.ANNIHILATED
    for p in range(1, max_p + 1):
        if p <= len(selection.values):
            r = selection.values[:p]
        elif annihilated:
            r = tuple(selection.padded(p))
        else:
            report.per_p.append(PEntry(
                p=p, r=[], error=f"r selection stopped at p={len(selection.values)}: {selection.message}",
            ))
            continue
        report.per_p.append(_entry(series, r, p, tol, reference))

    if series.kind is Kind.SIN and series.phase.x != 0 and report.per_p and report.per_p[0].ok:
        report.sine_shift_discrepancy = _sine_shift_check(series, report.per_p[-1])
    return report


def _sine_shift_check(series: SeriesSpec, entry: PEntry) -> float:
    """Largest gap between the sine transform and the equivalent shifted-cosine one."""
    if not entry.ok:
        return math.nan
    shifted = series.with_phase(series.phase.shifted_to_cosine(), Kind.COS)
    t_sin = transform(series, entry.r)
    t_cos = transform(shifted, entry.r)
    gaps = [abs(u - v) for u, v in zip(t_sin.head_terms, t_cos.head_terms)]
    gaps += [abs(t_sin.remainder_term(n) - t_cos.remainder_term(n)) for n in range(1, 21)]
    return max(gaps)


def reference_value(series: SeriesSpec, tol: float):
    """Reference sum certified for measurements at tolerance ``tol``."""
    return oracle_sum(series, tol * REFERENCE_TAIL_FACTOR)[0]


__all__ = [
    "AccelerationReport",
    "BudgetExceeded",
    "PEntry",
    "build_report",
    "oracle_sum",
    "reference_value",
    "terms_to_tolerance_direct",
    "terms_to_tolerance_transformed",
]
