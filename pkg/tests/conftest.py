import math

import pytest

from trigaccel import SeriesSpec, TrigPhase, two_exponential

EXAMPLE_X = 3 * math.pi / 4
EXAMPLE_R = (1 / 3, 2 / 9, 4 / 27)

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


def example_coefficient(n):
    return 1 / (2**n + 3**n)


def brute_reference(term, n_terms=200):
    """Independent reference: exactly rounded fsum of the first n_terms terms."""
    terms = [complex(term(n)) for n in range(1, n_terms + 1)]
    re = math.fsum(z.real for z in terms)
    im = math.fsum(z.imag for z in terms)
    return re if im == 0 else complex(re, im)


@pytest.fixture
def example_series():
    return SeriesSpec(two_exponential(2, 3), TrigPhase(1.0, 0.0, EXAMPLE_X), "cos")


@pytest.fixture(scope="session")
def example_reference():
    return brute_reference(lambda n: example_coefficient(n) * math.cos(n * EXAMPLE_X))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")
