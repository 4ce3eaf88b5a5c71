"""Lazily evaluated coefficient sequences a_1, a_2, ... and the built-in families.

A sequence has two evaluation paths: ``seq(n)`` returns a Python complex and
is what the transforms use, while ``seq.precise(n)`` returns an mpmath number
at the current working precision and is what the ratio-limit estimation
uses.  When no high-precision evaluator is supplied, ``precise`` promotes the
double-precision value and ``digits`` drops to 15 so callers know how much
cancellation the values can survive.
"""

from __future__ import annotations

import math
import threading
from pathlib import Path
from typing import Callable, Optional

import mpmath as mp

from .summation import is_finite

DOUBLE_DIGITS = 15
MIN_FILE_LINES = 32


class CoefficientSequence:
    """Memoized evaluator for a_n, n >= 1.

    Parameters
    ----------
    func : callable
        ``n -> number``; must be deterministic.
    precise : callable, optional
        ``n -> mpmath number`` evaluated at the ambient ``mp.dps``.
    length : int, optional
        Number of nonzero leading terms for finite sequences; terms past
        ``length`` are exactly zero.
    tail_index : callable, optional
        ``bound -> N`` such that ``sum_{n>N} |a_n| <= bound``.
    ratio_limit : number, optional
        Known value of lim a_{n+1}/a_n, kept as metadata.
    """

    def __init__(
        self,
        func: Callable[[int], complex],
        *,
        precise: Optional[Callable[[int], object]] = None,
        length: Optional[int] = None,
        tail_index: Optional[Callable[[float], int]] = None,
        ratio_limit: Optional[complex] = None,
        name: str = "sequence",
    ) -> None:
        self._func = func
        self._precise = precise
        self.length = length
        self.tail_index = tail_index
        self.ratio_limit = ratio_limit
        self.name = name
        self._cache: dict[int, complex] = {}
        self._mp_cache: dict[tuple[int, int], object] = {}
        self._lock = threading.Lock()

    @property
    def digits(self) -> Optional[int]:
        """Trustworthy significant digits; None means "as many as mp.dps"."""
        return None if self._precise is not None else DOUBLE_DIGITS

    def __call__(self, n: int) -> complex:
        if n < 1:
            raise IndexError(f"coefficient index must be >= 1, got {n}")
        try:
            return self._cache[n]
        except KeyError:
            pass
        if self.length is not None and n > self.length:
            value = 0j
        else:
            value = complex(self._func(n))
            if not is_finite(value):
                raise ValueError(f"{self.name}: a_{n} is not finite ({value!r})")
        with self._lock:
            self._cache[n] = value
        return value

    def precise(self, n: int):
        if n < 1:
            raise IndexError(f"coefficient index must be >= 1, got {n}")
        key = (n, mp.mp.prec)
        try:
            return self._mp_cache[key]
        except KeyError:
            pass
        if self.length is not None and n > self.length:
            value = mp.mpf(0)
        elif self._precise is not None:
            value = self._precise(n)
        else:
            z = self(n)
            value = mp.mpf(z.real) if z.imag == 0 else mp.mpc(z.real, z.imag)
        with self._lock:
            self._mp_cache[key] = value
        return value

    def __repr__(self) -> str:
        return f"CoefficientSequence({self.name})"


def two_exponential(a: float, b: float) -> CoefficientSequence:
    """a_n = 1/(a^n + b^n) with 0 < a < b."""
    if not (0 < a < b):
        raise ValueError(f"two-exponential family requires 0 < a < b, got a={a}, b={b}")

    def func(n):
        try:
            return 1.0 / (float(a) ** n + float(b) ** n)
        except OverflowError:
            # b^n overflows past n ~ 700/log(b); factor it out
            return math.exp(-n * math.log(b)) / (1.0 + (a / b) ** n)

    def precise(n):
        return 1 / (mp.mpf(a) ** n + mp.mpf(b) ** n)

    def tail_index(bound):
        # sum_{n>N} b^-n = b^-N/(b-1)
        if b <= 1:
            return None
        return max(1, math.ceil(-math.log(bound * (b - 1)) / math.log(b)))

    return CoefficientSequence(
        func, precise=precise, tail_index=tail_index, ratio_limit=1 / b,
        name=f"1/({a:g}^n+{b:g}^n)",
    )


def geometric(rho: complex, scale: complex = 1.0) -> CoefficientSequence:
    """a_n = scale * rho^n."""
    rho_mp = mp.mpmathify(rho)
    scale_mp = mp.mpmathify(scale)

    def tail_index(bound):
        q = abs(rho)
        if q >= 1:
            return None
        if q == 0 or scale == 0:
            return 1
        # sum_{n>N} |c| q^n = |c| q^(N+1)/(1-q)
        return max(1, math.ceil(math.log(bound * (1 - q) / abs(scale)) / math.log(q)))

    return CoefficientSequence(
        lambda n: scale * rho ** n,
        precise=lambda n: scale_mp * rho_mp ** n,
        tail_index=tail_index,
        ratio_limit=rho,
        name=f"{scale}*({rho})^n",
    )


def power(s: float) -> CoefficientSequence:
    """a_n = 1/n^s."""
    if s <= 0:
        raise ValueError(f"power family requires s > 0, got {s}")
    return CoefficientSequence(
        lambda n: n ** -s,
        precise=lambda n: mp.mpf(n) ** -mp.mpf(s),
        ratio_limit=1.0,
        name=f"1/n^{s:g}",
    )


def _to_mp(v):
    if isinstance(v, tuple):
        return mp.mpc(mp.mpf(v[0]), mp.mpf(v[1]))
    return mp.mpmathify(v)


def from_values(values, *, name: str = "values") -> CoefficientSequence:
    """Finite sequence a_1..a_len(values); zero afterwards.

    Entries may be numbers, decimal strings or ``(re, im)`` string pairs.
    Strings are re-parsed at the ambient precision on the mpmath path, so
    decimal data is not rounded to double before ratio estimation.
    """
    raw = list(values)
    with mp.workdps(30):
        doubles = [complex(_to_mp(v)) for v in raw]
    return CoefficientSequence(
        lambda n: doubles[n - 1],
        precise=lambda n: _to_mp(raw[n - 1]),
        length=len(raw),
        tail_index=lambda bound: len(raw),
        name=name,
    )


def parse_coefficient_line(text: str):
    """Parse one data line: a decimal, or ``re,im`` for a complex value."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) > 2:
        raise ValueError(f"expected 'value' or 're,im', got {text!r}")
    for part in parts:
        float(part)  # raises ValueError on malformed input
    return parts[0] if len(parts) == 1 else (parts[0], parts[1])


def read_coefficient_file(path) -> CoefficientSequence:
    """Load a_1, a_2, ... from a UTF-8 text file, one value per line.

    Blank lines and ``#`` comments are ignored; line k (after filtering) is
    a_k.  Complex values are written ``re,im``.
    """
    path = Path(path)
    values = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(parse_coefficient_line(line))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    if len(values) < MIN_FILE_LINES:
        raise ValueError(
            f"{path}: coefficient file needs at least {MIN_FILE_LINES} values, got {len(values)}"
        )
    return from_values(values, name=path.name)
