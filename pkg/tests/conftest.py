import numpy as np
import pytest

from bcnf.core import make_params

# three points on the tau_L = 1.35, delta_L = 0.2, delta_R = 2 slice
SLICE_A = (1.35, 0.2, 0.0, 2.0)
SLICE_B = (1.35, 0.2, -0.7, 2.0)
SLICE_C = (1.35, 0.2, -1.4, 2.0)
REGION_EX = (1.1, 0.4, 0.4, 2.0)
RETURN_EX = (1.0, 0.6, 1.2, 1.2)
CONE_EX = (1.0, 0.2, -1.2, 2.0)


def random_params(rng, n):
    """Draws over the admissible region, tau_R of either sign."""
    return [
        make_params(rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0),
                    rng.uniform(-3.0, 3.0), rng.uniform(0.05, 3.0))
        for _ in range(n)
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
