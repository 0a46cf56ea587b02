import math

import pytest

from bcnf.core import make_params
from bcnf.dynamics import (
    DIVERGED, NEG_LE, PERIODIC, POS_LE, SimOptions, classify_point,
    detect_periodic, estimate_lyapunov, iterate_orbit, periodic_orbit,
)
from bcnf.prover import prove_chaos
from bcnf.trapping import evaluate_F, omega_contains
from conftest import SLICE_A, SLICE_B, SLICE_C


def test_origin_step():
    s = iterate_orbit(make_params(*SLICE_A), (0.0, 0.0), 1)
    assert s.final == (1.0, 0.0) and not s.diverged


def test_right_fixed_point():
    p = make_params(1.0, 0.5, 0.4, 2.0)
    x = 1 / 2.6
    z = (x, -2.0 * x)
    s = iterate_orbit(p, z, 1)
    assert s.final == pytest.approx(z, abs=1e-9)


def test_divergence_flag():
    p = make_params(1.0, 0.5, 5.0, 3.0)
    assert iterate_orbit(p, (0.0, 0.0), 1000).diverged
    assert classify_point(p).kind == DIVERGED
    assert estimate_lyapunov(p) is None


def test_slice_b_period_five():
    p = make_params(*SLICE_B)
    assert detect_periodic(p) == 5
    cycle = periodic_orbit(p)
    region = prove_chaos(p).region
    inside = [z for z in cycle if omega_contains(region, z)]
    assert len(inside) == 1
    ret = evaluate_F(p, inside[0])
    assert (ret.p, ret.q) == (3, 2)
    assert ret.image == pytest.approx(inside[0], abs=1e-8)
    assert estimate_lyapunov(p) < 0


def test_slice_a_no_period():
    assert detect_periodic(make_params(*SLICE_A)) is None


def test_lyapunov_of_stable_right_fixed_point():
    p = make_params(1.0, 0.5, 0.0, 0.5)
    # the orbit settles on the right-branch fixed point, whose
    # eigenvalues have modulus sqrt(0.5)
    z = iterate_orbit(p, (0.0, 0.0), 10_000).final
    assert z[0] > 0
    assert z == pytest.approx(iterate_orbit(p, z, 1).final, abs=1e-12)
    assert estimate_lyapunov(p) == pytest.approx(math.log(math.sqrt(0.5)), abs=0.02)
    assert classify_point(p).kind == PERIODIC


@pytest.mark.parametrize("params,kind", [(SLICE_A, POS_LE), (SLICE_C, POS_LE), (SLICE_B, PERIODIC)])
def test_slice_classification(params, kind):
    cl = classify_point(make_params(*params))
    assert cl.kind == kind
    if kind == PERIODIC:
        assert cl.period == 5


def test_chaos_estimate_above_bound():
    for params in (SLICE_A, SLICE_C):
        p = make_params(*params)
        bound = prove_chaos(p).lyapunov_lower_bound
        assert estimate_lyapunov(p) >= bound - 0.01


def test_stable_orbit_without_period_detection_is_neg_le():
    # with period detection effectively off, a contracting orbit falls
    # through to the Lyapunov estimate, which is negative
    p = make_params(1.0, 0.5, 0.0, 0.5)
    cl = classify_point(p, SimOptions(period_cap=1, period_tol=1e-300))
    assert cl.kind == NEG_LE


def test_options_validated():
    with pytest.raises(ValueError):
        SimOptions(period_cap=0)
    with pytest.raises(ValueError):
        SimOptions(samples=0)


def test_deterministic():
    p = make_params(*SLICE_A)
    assert estimate_lyapunov(p) == estimate_lyapunov(p)
    assert classify_point(p) == classify_point(p)
