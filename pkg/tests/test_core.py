import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcnf.core import (
    IDENTITY, LEFT, RIGHT, Mat2, ParameterError, Point, apply_branch,
    apply_branch_inverse, apply_f, branch_matrix, make_params, mat_mul,
    mat_pow, mat_vec, return_matrix,
)
from conftest import random_params


def test_origin_maps_to_unit_point():
    p = make_params(1.35, 0.2, 0.0, 2.0)
    assert apply_f(p, (0.0, 0.0)) == (1.0, 0.0)


def test_branch_selection_at_switching_line():
    # x = 0 belongs to the left branch; both branches agree there
    p = make_params(1.0, 0.5, -2.0, 3.0)
    z = (0.0, 0.7)
    assert apply_f(p, z) == apply_branch(p, z, LEFT) == apply_branch(p, z, RIGHT)
    assert apply_f(p, (1.0, 0.0)) == (-1.0, -3.0)
    assert apply_f(p, (-1.0, 0.0)) == pytest.approx((0.0, 0.5))


@pytest.mark.parametrize("bad", [
    (0.0, 0.2, 0.0, 2.0), (-1.0, 0.2, 0.0, 2.0), (1.0, 0.0, 0.0, 2.0),
    (1.0, 0.2, 0.0, -1.0), (math.nan, 0.2, 0.0, 2.0), (1.0, 0.2, math.inf, 2.0),
])
def test_invalid_params_rejected(bad):
    with pytest.raises(ParameterError):
        make_params(*bad)


def test_parameter_error_names_constraint():
    with pytest.raises(ParameterError, match="tau_L"):
        make_params(-1, 0.2, 0, 2)


def test_sign_and_quadrant_properties(rng):
    # y' = -delta x, so the image's y has sign opposite to x
    params = random_params(rng, 10_000)
    pts = rng.uniform(-5, 5, size=(10_000, 2))
    for p, (x, y) in zip(params, pts):
        xn, yn = apply_f(p, (x, y))
        assert np.sign(yn) == -np.sign(x)
        if x > 0:
            assert yn < 0  # Q1, Q4 -> Q3 u Q4
        elif x < 0:
            assert yn > 0  # Q2, Q3 -> Q1 u Q2


def test_inverse_round_trip(rng):
    for p in random_params(rng, 500):
        z = Point(*rng.uniform(-3, 3, 2))
        for side in (LEFT, RIGHT):
            back = apply_branch_inverse(p, apply_branch(p, z, side), side)
            assert back == pytest.approx(z, abs=1e-9)


def test_branch_is_affine_in_matrix_form(rng):
    p = random_params(rng, 1)[0]
    z = Point(-0.3, 0.8)
    lin = mat_vec(branch_matrix(p, LEFT), z)
    assert apply_branch(p, z, LEFT) == pytest.approx((lin[0] + 1.0, lin[1]))


def test_mat_pow_and_return_matrix():
    p = make_params(1.35, 0.2, -0.7, 2.0)
    L, R = branch_matrix(p, LEFT), branch_matrix(p, RIGHT)
    assert mat_pow(L, 0) == IDENTITY
    np_L = np.array(L).reshape(2, 2)
    assert np.allclose(np.array(mat_pow(L, 5)).reshape(2, 2), np.linalg.matrix_power(np_L, 5))
    M = return_matrix(p, 3, 2)
    assert M == mat_mul(mat_mul(R, R), mat_pow(L, 3))
    assert M.det == pytest.approx(0.2 ** 3 * 2.0 ** 2)
    with pytest.raises(ValueError):
        mat_pow(L, -1)


def test_bad_side():
    with pytest.raises(ValueError):
        apply_branch(make_params(1, 1, 1, 1), (0, 0), "X")


finite = st.floats(-1e3, 1e3, allow_nan=False)
pos = st.floats(1e-3, 10.0)


@settings(max_examples=300, deadline=None)
@given(pos, pos, finite, pos, finite, finite)
def test_determinant_of_branch_is_delta(tl, dl, tr, dr, x, y):
    p = make_params(tl, dl, tr, dr)
    assert branch_matrix(p, LEFT).det == pytest.approx(dl)
    assert branch_matrix(p, RIGHT).det == pytest.approx(dr)
    xn, yn = apply_f(p, (x, y))
    assert (yn == 0.0) == (x == 0.0)


def test_mat2_trace_det():
    m = Mat2(1.0, 2.0, 3.0, 4.0)
    assert (m.trace, m.det) == (5.0, -2.0)
