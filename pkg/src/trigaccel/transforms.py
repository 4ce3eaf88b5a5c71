"""Finite-p equivalent-series transforms of sum a_n cos((alpha*n + beta)*x).

For parameters r_1..r_p with d_j = 1 - 2 r_j cos(alpha*x) + r_j^2 != 0,

    sum_n a_n T(n) = a_1 T_{r_1}(0) / d_1
                   + sum_{k=1}^{p-1} L_{r_1..r_k}(a_1) T_{r_1..r_{k+1}}(0) / (d_1...d_{k+1})
                   + (d_1...d_p)^{-1} sum_{n>=1} L_{r_1..r_p}(a_n) T_{r_1..r_p}(n)

where T is cos or sin and T_{r..}(n) is L applied to the sequence T(n).
The identity holds for any real or complex r_j; the remainder coefficients
are small when r_j track the successive ratio limits of the sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .operators import (
    Kind,
    RSequence,
    TrigPhase,
    apply_L_symmetric,
    as_rsequence,
    operator_weights,
    trig_L,
    trig_value,
)
from .sequences import CoefficientSequence
from .summation import CompensatedSum, real_if_close

# |d_j| below this is treated as r_j e^{+-i alpha x} = 1
DENOM_EPS = 1e-8


class DenominatorNearZero(ValueError):
    """Raised when 1 - 2 r_j cos(alpha x) + r_j^2 is numerically zero."""

    def __init__(self, j: int, value: complex):
        self.j = j
        self.value = value
        super().__init__(
            f"denominator d_{j} = {value!r} is below {DENOM_EPS:g}: "
            f"r_{j} * exp(+-i*alpha*x) is (nearly) 1, the transform is undefined"
        )


@dataclass(frozen=True)
class SeriesSpec:
    coefficients: CoefficientSequence
    phase: TrigPhase
    kind: Kind = Kind.COS

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))

    def term(self, n: int) -> complex:
        return self.coefficients(n) * trig_value(self.kind, self.phase, n)

    def with_phase(self, phase: TrigPhase, kind=None) -> "SeriesSpec":
        return SeriesSpec(self.coefficients, phase, self.kind if kind is None else kind)


def denominator(r_j: complex, phase: TrigPhase) -> complex:
    return 1 - 2 * r_j * math.cos(phase.alpha * phase.x) + r_j * r_j


def denominators(r, phase: TrigPhase) -> list:
    """d_j for every r_j, raising DenominatorNearZero on the first bad one."""
    out = []
    for j, rj in enumerate(as_rsequence(r).values, 1):
        d = denominator(rj, phase)
        if abs(d) < DENOM_EPS:
            raise DenominatorNearZero(j, d)
        out.append(d)
    return out


def head_term(series: SeriesSpec, r: RSequence, k: int, dens=None):
    """k-th closed-form term (k = 0, 1, ...); uses r_1..r_{k+1}.

    Shared by the finite transform and the infinite (truncated) series so
    both produce bitwise identical terms.
    """
    if k < 0 or k + 1 > len(r):
        raise ValueError(f"head term {k} needs {k + 1} r values, have {len(r)}")
    if dens is None:
        dens = denominators(r.prefix(k + 1), series.phase)
    a = series.coefficients
    lead = a(1) if k == 0 else apply_L_symmetric(a, r.prefix(k), 1)
    trig0 = trig_L(series.kind, series.phase, r.prefix(k + 1), 0)
    prod = 1 + 0j
    for d in dens[: k + 1]:
        prod *= d
    return real_if_close(lead * trig0 / prod)


@dataclass(frozen=True)
class TransformResult:
    """Head terms, denominators and a lazy remainder for one choice of r."""

    series: SeriesSpec
    r: RSequence
    head_terms: tuple
    denominators: tuple
    _a_weights: tuple = field(repr=False)
    _denominator_product: complex = field(repr=False)

    @property
    def p(self) -> int:
        return len(self.r)

    def remainder_term(self, n: int):
        """n-th term (n >= 1) of the trailing series, already divided by prod d_j."""
        if n < 1:
            raise IndexError(f"remainder index must be >= 1, got {n}")
        w = self._a_weights
        p = len(w) - 1
        a = self.series.coefficients
        kind, phase = self.series.kind, self.series.phase
        la = sum(wk * a(n + p - k) for k, wk in enumerate(w))
        if la == 0:
            return 0.0
        lt = sum(wk * trig_value(kind, phase, n + p - k) for k, wk in enumerate(w))
        return real_if_close(la * lt / self._denominator_product)

    def remainder_coefficient(self, n: int):
        """L_{r_1..r_p}(a_n), the quantity that the r choice is meant to shrink."""
        return apply_L_symmetric(self.series.coefficients, self.r, n)

    def head_sum(self):
        return CompensatedSum(self.head_terms).result()

    def partial_sums(self) -> Iterator:
        """Yield the transformed partial sums for 0, 1, 2, ... remainder terms."""
        acc = CompensatedSum(self.head_terms)
        yield acc.result()
        n = 1
        while True:
            acc.add(self.remainder_term(n))
            yield acc.result()
            n += 1


def transform(series: SeriesSpec, r) -> TransformResult:
    """Equivalent series for ``series`` with parameters ``r`` (any p >= 1)."""
    r = as_rsequence(r)
    dens = denominators(r, series.phase)
    heads = tuple(head_term(series, r, k, dens) for k in range(len(r)))
    prod = 1 + 0j
    for d in dens:
        prod *= d
    return TransformResult(
        series=series,
        r=r,
        head_terms=heads,
        denominators=tuple(real_if_close(d) for d in dens),
        _a_weights=tuple(operator_weights(r)),
        _denominator_product=prod,
    )


def transform_single_r(series: SeriesSpec, r: complex, p: int) -> TransformResult:
    """The repeated-parameter case r_1 = ... = r_p = r (powers of one Delta_r)."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return transform(series, RSequence((r,) * p))


def transformed_partial_sum(t: TransformResult, n_remainder_terms: int):
    """Head terms plus the first ``n_remainder_terms`` remainder terms."""
    if n_remainder_terms < 0:
        raise ValueError("n_remainder_terms must be >= 0")
    acc = CompensatedSum(t.head_terms)
    for n in range(1, n_remainder_terms + 1):
        acc.add(t.remainder_term(n))
    return acc.result()
