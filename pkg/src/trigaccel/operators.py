"""The generalized difference operator L_{r_1...r_p} and its symmetric-sum form.

L_{r_1}(a_n) = a_{n+1} - r_1 a_n and each further parameter applies one more
shift-minus-scale factor.  Expanded, the operator is

    L_{r_1...r_p}(a_n) = sum_{k=0}^{p} (-1)^k E_k a_{n+p-k}

with E_k the elementary symmetric sums of the r_j.  Coefficient sequences
start at n = 1; the trigonometric sequences cos((alpha*n + beta)*x) and
sin(...) start at n = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .summation import is_finite, real_if_close


class Kind(str, enum.Enum):
    COS = "cos"
    SIN = "sin"

    @classmethod
    def parse(cls, value: Union[str, "Kind"]) -> "Kind":
        if isinstance(value, cls):
            return value
        aliases = {"cos": cls.COS, "cosine": cls.COS, "sin": cls.SIN, "sine": cls.SIN}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ValueError(f"kind must be 'cos' or 'sin', got {value!r}") from None


@dataclass(frozen=True)
class RSequence:
    """Transform parameters r_1..r_p, stored as complex numbers."""

    values: tuple

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if not vals:
            raise ValueError("RSequence needs at least one value")
        if not all(is_finite(v) for v in vals):
            raise ValueError(f"RSequence values must be finite, got {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def p(self) -> int:
        return len(self.values)

    @property
    def positive_real(self) -> bool:
        return all(v.imag == 0 and v.real > 0 for v in self.values)

    def prefix(self, k: int) -> "RSequence":
        return RSequence(self.values[:k])

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def as_python(self) -> list:
        return [real_if_close(v) for v in self.values]


def as_rsequence(r) -> RSequence:
    if isinstance(r, RSequence):
        return r
    if isinstance(r, (int, float, complex)):
        return RSequence((r,))
    return RSequence(tuple(r))


@dataclass(frozen=True)
class TrigPhase:
    """alpha, beta, x of the trigonometric factor cos((alpha*n + beta)*x)."""

    alpha: float
    beta: float
    x: float

    def __post_init__(self):
        for name in ("alpha", "beta", "x"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")

    def angle(self, n: int) -> float:
        return (self.alpha * n + self.beta) * self.x

    def shifted_to_cosine(self) -> "TrigPhase":
        """Phase whose cosine sequence equals this phase's sine sequence (x != 0)."""
        if self.x == 0:
            raise ValueError("sine-to-cosine phase shift needs x != 0")
        return TrigPhase(self.alpha, self.beta - math.pi / (2 * self.x), self.x)


def _canonical(values: Iterable[complex]) -> list:
    # fixed order makes the E_k bitwise independent of how r was listed
    return sorted(values, key=lambda z: (z.real, z.imag))


def elementary_symmetric(r) -> list:
    """E_0..E_p of r, built by multiplying in one r_j at a time (O(p^2))."""
    r = as_rsequence(r)
    e = [1 + 0j]
    for rj in _canonical(r.values):
        e.append(0j)
        for k in range(len(e) - 1, 0, -1):
            e[k] = e[k] + rj * e[k - 1]
    return [real_if_close(v) for v in e]


def operator_weights(r) -> list:
    """Weights w_k = (-1)^k E_k so that L(a_n) = sum_k w_k a_{n+p-k}."""
    return [(-1) ** k * complex(ek) for k, ek in enumerate(elementary_symmetric(r))]


def _check_index(n: int, lowest: int) -> None:
    if n < lowest:
        raise IndexError(f"index must be >= {lowest}, got {n}")


def apply_L_recurrence(a: Callable[[int], complex], r, n: int):
    """L_{r_1...r_p}(a_n) by the defining two-term recurrence.

    Only a_n..a_{n+p} are evaluated.
    """
    r = as_rsequence(r)
    _check_index(n, 1)
    # level j holds L_{r_1..r_j}(a_m) for m = n..n+p-j
    level = [complex(a(m)) for m in range(n, n + r.p + 1)]
    for rj in r.values:
        level = [level[i + 1] - rj * level[i] for i in range(len(level) - 1)]
    return real_if_close(level[0])


def apply_L_symmetric(a: Callable[[int], complex], r, n: int):
    """L_{r_1...r_p}(a_n) as the signed elementary-symmetric combination."""
    r = as_rsequence(r)
    _check_index(n, 1)
    return real_if_close(_weighted(operator_weights(r), a, n))


def _weighted(weights: Sequence[complex], seq: Callable[[int], complex], n: int) -> complex:
    p = len(weights) - 1
    return sum(w * seq(n + p - k) for k, w in enumerate(weights))


def trig_value(kind: Kind, phase: TrigPhase, n: int) -> float:
    theta = phase.angle(n)
    return math.cos(theta) if kind is Kind.COS else math.sin(theta)


def trig_L(kind, phase: TrigPhase, r, n: int):
    """C_{r_1...r_p}(n) (cosine) or S_{r_1...r_p}(n) (sine), defined for n >= 0."""
    kind = Kind.parse(kind)
    r = as_rsequence(r)
    _check_index(n, 0)
    value = _weighted(operator_weights(r), lambda m: trig_value(kind, phase, m), n)
    return real_if_close(value)
