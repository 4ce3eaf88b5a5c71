import math

import mpmath as mp
import pytest

from trigaccel.sequences import (
    CoefficientSequence,
    from_values,
    geometric,
    power,
    read_coefficient_file,
    two_exponential,
)


def test_memoized_and_deterministic():
    calls = []

    def f(n):
        calls.append(n)
        return 1.0 / n

    seq = CoefficientSequence(f)
    assert seq(3) == seq(3) == 1 / 3
    assert calls == [3]


def test_index_starts_at_one():
    with pytest.raises(IndexError):
        two_exponential(2, 3)(0)


def test_non_finite_rejected():
    seq = CoefficientSequence(lambda n: math.inf)
    with pytest.raises(ValueError, match="not finite"):
        seq(1)


def test_two_exponential_values():
    seq = two_exponential(2, 3)
    for n in (1, 5, 40):
        assert math.isclose(seq(n).real, 1 / (2**n + 3**n), rel_tol=1e-15)
    # large n stays finite and nonzero
    assert seq(600).real > 0


@pytest.mark.parametrize("a,b", [(3, 2), (0, 2), (2, 2), (-1, 2)])
def test_two_exponential_requires_ordered_positive(a, b):
    with pytest.raises(ValueError, match="0 < a < b"):
        two_exponential(a, b)


def test_precise_path_uses_working_precision():
    seq = two_exponential(2, 3)
    with mp.workdps(50):
        v = seq.precise(10)
        assert abs(v - mp.mpf(1) / (2**10 + 3**10)) < mp.mpf(10) ** -48
    assert seq.digits is None
    assert CoefficientSequence(lambda n: 1.0).digits == 15


@pytest.mark.parametrize("seq", [two_exponential(2, 3), geometric(0.7), geometric(-0.4, 2.0)])
def test_tail_index_bounds_the_tail(seq):
    for bound in (1e-6, 1e-12):
        n = seq.tail_index(bound)
        tail = math.fsum(abs(seq(k)) for k in range(n + 1, n + 400))
        assert tail <= bound


def test_power_family():
    assert power(2)(4) == 1 / 16
    with pytest.raises(ValueError):
        power(0)


def test_from_values_is_finite():
    seq = from_values(["0.5", ("1", "-2"), 3])
    assert seq(1) == 0.5
    assert seq(2) == complex(1, -2)
    assert seq(4) == 0
    with mp.workdps(40):
        assert seq.precise(1) == mp.mpf("0.5")


def test_file_round_trip(tmp_path):
    path = tmp_path / "coeffs.txt"
    lines = ["# header comment", ""] + [f"{1 / 2**k!r}  # a_{k}" for k in range(1, 33)] + ["0.25,-0.5"]
    path.write_text("\n".join(lines), encoding="utf-8")
    seq = read_coefficient_file(path)
    assert seq.length == 33
    assert seq(1) == 0.5
    assert seq(33) == complex(0.25, -0.5)
    assert seq(34) == 0


def test_file_too_short(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text("\n".join(["1"] * 31), encoding="utf-8")
    with pytest.raises(ValueError, match="at least 32"):
        read_coefficient_file(path)


def test_file_malformed_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(["1"] * 40 + ["abc"]), encoding="utf-8")
    with pytest.raises(ValueError, match=":41:"):
        read_coefficient_file(path)
