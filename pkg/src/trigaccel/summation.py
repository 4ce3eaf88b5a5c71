"""Compensated summation and scalar helpers shared by every module."""

from __future__ import annotations

import math
from typing import Iterable

# |imag| below this fraction of |value| is reported as a real number
REAL_IF_CLOSE_RTOL = 1e-12


def _two_sum(s: float, t: float) -> tuple[float, float]:
    # Neumaier variant: correct for either operand being the larger one
    total = s + t
    if abs(s) >= abs(t):
        err = (s - total) + t
    else:
        err = (t - total) + s
    return total, err


class CompensatedSum:
    """Running Neumaier sum over real or complex addends.

    Real and imaginary parts carry separate compensation terms, so the
    accumulated error stays at a few ulps of the largest partial sum
    regardless of how many terms are added.
    """

    __slots__ = ("_re", "_im", "_cre", "_cim", "count")

    def __init__(self, values: Iterable[complex] = ()) -> None:
        self._re = self._im = 0.0
        self._cre = self._cim = 0.0
        self.count = 0
        for v in values:
            self.add(v)

    def add(self, value: complex) -> None:
        z = complex(value)
        self._re, e = _two_sum(self._re, z.real)
        self._cre += e
        self._im, e = _two_sum(self._im, z.imag)
        self._cim += e
        self.count += 1

    @property
    def value(self) -> complex:
        return complex(self._re + self._cre, self._im + self._cim)

    def result(self) -> float | complex:
        return real_if_close(self.value)


def compensated_sum(values: Iterable[complex]) -> float | complex:
    return CompensatedSum(values).result()


def real_if_close(z: complex, rtol: float = REAL_IF_CLOSE_RTOL) -> float | complex:
    """Drop a negligible imaginary part: return ``z.real`` if ``|imag| <= rtol*|z|``."""
    z = complex(z)
    if abs(z.imag) <= rtol * abs(z):
        return z.real
    return z


def is_finite(z: complex) -> bool:
    z = complex(z)
    return math.isfinite(z.real) and math.isfinite(z.imag)
