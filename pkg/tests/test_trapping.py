import numpy as np
import pytest

from bcnf.core import Point, apply_f, make_params
from bcnf.partition import chi_L, preimage_fan
from bcnf.trapping import (
    FS_RIGHT, FT_LEFT, TrappingFailure, _s_violations, _t_violations,
    build_trapping, check_conditions, diagnostic_polygons, evaluate_F,
    F_omega_polygon, first_return, omega_contains, omega_polygon, sample_omega,
)
from conftest import REGION_EX, RETURN_EX, SLICE_A, SLICE_B, SLICE_C


def region(params, p_min, p_max):
    p = make_params(*params)
    return p, build_trapping(p, preimage_fan(p, p_max), p_min, p_max)


def test_region_example():
    p, r = region(REGION_EX, 2, 4)
    assert check_conditions(r) == []
    assert (r.q_min, r.q_max) == (2, 3)
    assert chi_L(p, r.S) == 5 and chi_L(p, r.T) == 3
    assert r.U[0] == 0.0 and r.V[0] == 0.0
    assert r.fS[0] <= 0 and r.fT[0] <= 0


def test_return_count_example():
    _, r = region(RETURN_EX, 2, 3)
    assert (r.q_S, r.q_T) == (3, 4)
    assert (r.q_min, r.q_max) == (3, 5)


def test_slice_b_conditions_hold():
    _, r = region(SLICE_B, 2, 4)
    assert check_conditions(r) == []


def test_bad_range_rejected():
    p = make_params(*REGION_EX)
    with pytest.raises(ValueError):
        build_trapping(p, preimage_fan(p, 4), 3, 3)


def test_not_returning_is_a_failure():
    # a repelling right half that pushes the corner off to infinity
    p = make_params(1.1, 0.4, 3.0, 0.5)
    with pytest.raises(TrappingFailure):
        build_trapping(p, preimage_fan(p, 4), 2, 4)


def test_induced_map_matches_direct_iteration(rng):
    p = make_params(*SLICE_A)
    n = 0
    for x, y in zip(rng.uniform(-3, 0, 10_000), rng.uniform(-4, 0, 10_000)):
        if x == 0.0:
            continue
        ret = evaluate_F(p, (x, y))
        direct = first_return(p, (x, y), cap=2000)
        assert (ret is None) == (direct is None)
        if ret is None:
            continue
        assert ret.p + ret.q == direct[0]
        assert ret.image == pytest.approx(direct[1], abs=1e-9)
        assert ret.image[0] < 0 and ret.image[1] <= 0
        assert ret.p >= 1 and ret.q >= 1
        n += 1
    assert n > 5000


def test_fs_right_matches_signed_area(rng):
    for _ in range(10_000):
        s = rng.uniform(-6, -1.01)
        S = Point(0.0, s)
        fS = Point(s + 1.0, 0.0)
        FS = Point(rng.uniform(-6, 0), rng.uniform(-6, 0))
        cross = (fS[0] - S[0]) * (FS[1] - S[1]) - (fS[1] - S[1]) * (FS[0] - S[0])
        if abs(cross) < 1e-12:
            continue
        right = cross < 0
        assert (FS_RIGHT not in _s_violations(S, FS, Point(0, 0), 0.0)) == right
        # mirrored: F(T)-left is the opposite side of the line through T, f(T)
        assert (FT_LEFT not in _t_violations(S, FS, Point(0, -100), 0.0)) == (cross > 0)


def test_margin_tightens_conditions():
    _, r = region(REGION_EX, 2, 4)
    assert check_conditions(r, eps=0.0) == []
    assert len(check_conditions(r, eps=1e6)) == 4


def test_omega_membership():
    _, r = region(REGION_EX, 2, 4)
    assert not omega_contains(r, r.S)
    assert omega_contains(r, r.fT)
    mid = ((r.fS[0] + r.fT[0]) / 2, 0.0)
    assert omega_contains(r, mid)
    assert not omega_contains(r, (r.fS[0] - 0.1, 0.0))
    assert not omega_contains(r, (-0.1, 0.1))


@pytest.mark.parametrize("params,pm", [(REGION_EX, (2, 4)), (RETURN_EX, (2, 3)), (SLICE_A, (2, 6)), (SLICE_C, (1, 5))])
def test_polygons(params, pm):
    p, r = region(params, *pm)
    assert len(omega_polygon(r)) == 4
    hexagon = F_omega_polygon(r, p)
    assert len(hexagon) == 6
    if not check_conditions(r):
        for v in hexagon:
            assert omega_contains(r, v, tol=1e-9) or abs(v[0]) < 1e-9
    diag = diagnostic_polygons(r, p)
    assert len(diag["Psi_L"]) == (r.p_max + 1) + (r.p_min + 1)
    assert len(diag["Delta"]) == (3 if r.p_min == 1 else 4)
    assert all(v[0] >= -1e-12 for v in diag["Delta"])
    assert diag["Psi_L"][0] == r.S and diag["Psi_L"][-1] == r.T


def test_sampler_is_inside_and_uniform(rng):
    _, r = region(REGION_EX, 2, 4)
    pts = sample_omega(r, 20_000, rng)
    assert all(omega_contains(r, tuple(z), tol=1e-12) or z[0] == 0 for z in pts)
    # centroid of a uniform sample matches the polygon centroid
    poly = np.array(omega_polygon(r))
    x, y = poly[:, 0], poly[:, 1]
    xs, ys = np.roll(x, -1), np.roll(y, -1)
    cr = x * ys - xs * y
    area = cr.sum() / 2
    centroid = np.array([((x + xs) * cr).sum(), ((y + ys) * cr).sum()]) / (6 * area)
    assert np.allclose(pts.mean(axis=0), centroid, atol=0.02)


@pytest.mark.parametrize("params,pm", [(REGION_EX, (2, 4)), (SLICE_A, (2, 6)), (SLICE_B, (2, 4))])
def test_forward_invariance(params, pm, rng):
    p, r = region(params, *pm)
    for z in sample_omega(r, 10_000, rng):
        ret = evaluate_F(p, tuple(z))
        assert ret is not None
        assert r.p_min <= ret.p <= r.p_max
        assert r.q_min <= ret.q <= r.q_max
        assert omega_contains(r, ret.image, tol=1e-9)


def _left_orbit(p, z, n):
    for _ in range(n):
        z = apply_f(p, z)
    return z


@pytest.mark.parametrize("params,pm", [(SLICE_A, (2, 6)), (SLICE_C, (1, 5)), (RETURN_EX, (2, 3))])
def test_corner_escape_times(params, pm):
    # the k-th iterate of a corner sits on the axis up to rounding, which may
    # fall on either side; the (k+1)-th is clearly to the right
    p, r = region(params, *pm)
    for corner, k in ((r.S, r.p_max), (r.T, r.p_min)):
        assert abs(_left_orbit(p, corner, k)[0]) < 1e-9
        assert _left_orbit(p, corner, k + 1)[0] > 1e-3
        assert chi_L(p, corner) in (k, k + 1)
    assert apply_f(p, r.S) == pytest.approx(r.fS)
