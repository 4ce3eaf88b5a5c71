import itertools
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trigaccel.operators import (
    Kind,
    RSequence,
    TrigPhase,
    apply_L_recurrence,
    apply_L_symmetric,
    elementary_symmetric,
    operator_weights,
    trig_L,
)
from trigaccel.sequences import CoefficientSequence, geometric, two_exponential


def esp_by_subsets(r):
    """Brute-force oracle: sum of products over all m-subsets."""
    return [
        sum(math.prod(c) for c in itertools.combinations(r, m)) if m else 1
        for m in range(len(r) + 1)
    ]


def seq_from_list(values):
    return CoefficientSequence(lambda n: values[n - 1])


reals = st.floats(-1, 1, allow_nan=False)
r_lists = st.lists(reals, min_size=1, max_size=8)
complexes = st.builds(complex, reals, reals)


# --- RSequence / TrigPhase -------------------------------------------------

def test_rsequence_invariants():
    assert RSequence((0.5, 2)).positive_real
    assert not RSequence((0.5, 0)).positive_real
    assert not RSequence((0.5, 1j)).positive_real
    with pytest.raises(ValueError):
        RSequence(())
    with pytest.raises(ValueError):
        RSequence((math.nan,))


def test_trig_phase_rejects_zero_alpha():
    with pytest.raises(ValueError, match="alpha"):
        TrigPhase(0.0, 1.0, 1.0)


# --- elementary symmetric sums ---------------------------------------------

def test_esp_small_cases():
    assert elementary_symmetric([0.7]) == [1, 0.7]
    r1, r2 = 0.3, -1.7
    e = elementary_symmetric([r1, r2])
    assert e[0] == 1
    assert math.isclose(e[1], r1 + r2)
    assert math.isclose(e[2], r1 * r2)


@given(st.lists(st.floats(-2, 2), min_size=1, max_size=7))
def test_esp_matches_subset_enumeration(r):
    got = elementary_symmetric(r)
    want = esp_by_subsets(r)
    scale = esp_by_subsets([abs(v) for v in r])
    for g, w, s in zip(got, want, scale):
        assert abs(g - w) <= 1e-13 * max(s, 1)


@given(st.lists(st.floats(0.001, 2), min_size=1, max_size=12))
def test_esp_sum_is_product(r):
    assert math.isclose(sum(elementary_symmetric(r)), math.prod(1 + v for v in r), rel_tol=1e-13)


def test_weights_match_polynomial_from_roots():
    rng = np.random.default_rng(7)
    r = rng.uniform(-1, 1, 6) + 1j * rng.uniform(-1, 1, 6)
    np.testing.assert_allclose(operator_weights(r), np.poly(r), atol=1e-13)


# --- L evaluation ----------------------------------------------------------

def test_L_zero_parameter_is_shift():
    a = two_exponential(2, 3)
    assert apply_L_recurrence(a, [0], 1) == a(2).real
    assert apply_L_symmetric(a, [0], 1) == a(2).real


@pytest.mark.parametrize("n", [1, 4, 17])
def test_L_annihilates_matching_geometric(n):
    a = geometric(1 / 3)
    assert abs(apply_L_recurrence(a, [1 / 3], n)) <= 1e-16 * 3.0**-n
    assert abs(apply_L_symmetric(a, [1 / 3], n)) <= 1e-16 * 3.0**-n


def test_L_of_constant_with_unit_parameter():
    assert apply_L_symmetric(CoefficientSequence(lambda n: 4.2), [1], 3) == 0


def test_L_ratio_matches_next_example_parameter():
    # stage-2 ratio limit of 1/(2^n + 3^n) is 2/9
    a = two_exponential(2, 3)
    n = 30
    ratio = apply_L_recurrence(a, [1 / 3], n + 1) / apply_L_recurrence(a, [1 / 3], n)
    assert abs(ratio - 2 / 9) < 1e-5


def test_L_evaluates_only_the_needed_window():
    seen = set()

    def f(n):
        seen.add(n)
        return 1.0 / n

    a = CoefficientSequence(f)
    apply_L_recurrence(a, [0.1, 0.2, 0.3], 5)
    assert seen == {5, 6, 7, 8}


def test_L_rejects_bad_index():
    with pytest.raises(IndexError):
        apply_L_symmetric(two_exponential(2, 3), [0.5], 0)


@settings(max_examples=200)
@given(
    st.lists(reals, min_size=30, max_size=30),
    st.lists(st.one_of(reals, complexes), min_size=1, max_size=8),
    st.integers(1, 20),
)
def test_recurrence_and_symmetric_agree(values, r, n):
    a = seq_from_list(values)
    rec = apply_L_recurrence(a, r, n)
    sym = apply_L_symmetric(a, r, n)
    assert abs(rec - sym) <= 1e-12 * (1 + abs(sym))


@given(
    st.lists(reals, min_size=20, max_size=20),
    st.lists(reals, min_size=20, max_size=20),
    reals, reals, r_lists, st.integers(1, 10),
)
def test_linearity(u, v, lam, mu, r, n):
    a, b = seq_from_list(u), seq_from_list(v)
    combo = seq_from_list([lam * x + mu * y for x, y in zip(u, v)])
    lhs = apply_L_symmetric(combo, r, n)
    rhs = lam * apply_L_symmetric(a, r, n) + mu * apply_L_symmetric(b, r, n)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(lhs))


@given(
    st.floats(0.05, 0.95), st.floats(-3, 3).filter(lambda c: abs(c) > 1e-3),
    st.lists(st.floats(-1, 1), min_size=0, max_size=4), st.integers(0, 4), st.integers(1, 15),
)
def test_annihilation_anywhere_in_list(rho, c, others, pos, n):
    r = list(others)
    r.insert(min(pos, len(r)), rho)
    a = geometric(rho, c)
    bound = 1e-13 * abs(c) * rho**n
    assert abs(apply_L_symmetric(a, r, n)) <= bound
    assert abs(apply_L_recurrence(a, r, n)) <= bound


@given(st.lists(st.one_of(reals, complexes), min_size=2, max_size=8), st.randoms(), st.integers(1, 10))
def test_permutation_leaves_symmetric_form_unchanged(r, rnd, n):
    a = two_exponential(2, 3)
    shuffled = list(r)
    rnd.shuffle(shuffled)
    assert apply_L_symmetric(a, r, n) == apply_L_symmetric(a, shuffled, n)


# --- trigonometric sequences -----------------------------------------------

def test_trig_L_single_parameter_at_zero():
    ph = TrigPhase(1.3, 0.4, 0.9)
    r1 = 0.35
    want = math.cos((1.3 + 0.4) * 0.9) - r1 * math.cos(0.4 * 0.9)
    assert math.isclose(trig_L("cos", ph, [r1], 0), want, rel_tol=1e-14)


@pytest.mark.parametrize("p", [1, 3, 5])
def test_trig_L_zero_parameters_shift(p):
    ph = TrigPhase(1.0, 0.25, 2.0)
    for n in range(4):
        assert math.isclose(trig_L(Kind.COS, ph, [0] * p, n), math.cos((n + p + 0.25) * 2.0), abs_tol=1e-15)


def test_sine_equals_shifted_cosine():
    rng = random.Random(11)
    for _ in range(20):
        ph = TrigPhase(rng.uniform(0.5, 2), rng.uniform(-1, 1), rng.uniform(0.3, 3))
        r = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(rng.randint(1, 5))]
        for n in range(4):
            s = trig_L("sin", ph, r, n)
            c = trig_L("cos", ph.shifted_to_cosine(), r, n)
            assert abs(s - c) <= 1e-12 * (1 + abs(s))
