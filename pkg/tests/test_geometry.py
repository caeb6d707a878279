import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxswim.geometry import (ModelParams, ShapeCurve, curve_from_graph, interpolate,
                              polyline_curve, resample)
from coxswim.shapes import BumpParams, PurcellShape, bump, bump_slope


def test_model_params_derived_c():
    p = ModelParams(h=0.01)
    assert p.c == pytest.approx(-0.21714724095162594, rel=1e-15)
    assert p.c < 0


@pytest.mark.parametrize("kwargs", [
    {"h": 1.0}, {"h": 0.0}, {"delta": 0.0}, {"delta": 1.0}, {"order": 3}, {"n_quad": 4},
])
def test_model_params_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)


def test_flat_graph_is_straight():
    x = np.linspace(0, 1, 11)
    curve = curve_from_graph(x, np.zeros_like(x))
    np.testing.assert_array_equal(curve.t, np.tile([1.0, 0.0], (11, 1)))
    np.testing.assert_array_equal(curve.r[:, 1], 0.0)


def test_constant_slope_graph_tangent():
    x = np.linspace(0, 1, 11)
    curve = curve_from_graph(x, x.copy())
    np.testing.assert_allclose(curve.t[1:-1], 1 / math.sqrt(2), rtol=0, atol=1e-15)


def test_bump_graph_head_tangent_is_axis_aligned():
    # x-derivative of c1 exp(-c2/(1-x^2)) vanishes at x = 0 (sympy check in test_shapes)
    p = BumpParams()
    x = np.linspace(0, 1, 201)
    curve = curve_from_graph(x, bump(x, 0.0, p), bump_slope(x, 0.0, p))
    np.testing.assert_array_equal(curve.t[0], [1.0, 0.0])


def test_graph_is_shifted_to_put_tip_at_origin():
    x = np.linspace(0, 1, 5)
    curve = curve_from_graph(x, 0.3 + x ** 2)
    np.testing.assert_array_equal(curve.r[0], [0.0, 0.0])
    np.testing.assert_allclose(curve.r[:, 1], x ** 2)


@pytest.mark.parametrize("x, y", [
    ([0.0, 0.6, 0.5, 1.0], [0, 0, 0, 0]),
    ([0.0, 1.0], [0, 0]),
    ([0.0, 0.5, 0.9], [0, 0, 0]),
])
def test_curve_from_graph_errors(x, y):
    with pytest.raises(ValueError):
        curve_from_graph(x, y)


def test_interpolate_node_exactness():
    x = np.linspace(0, 1, 9)
    curve = curve_from_graph(x, np.sin(3 * x))
    for i in range(9):
        r, t = interpolate(curve, curve.s[i])
        np.testing.assert_array_equal(r, curve.r[i])
        np.testing.assert_array_equal(t, curve.t[i])


def test_interpolate_straight_midpoint():
    curve = polyline_curve([[0, 0], [1, 0]])
    r, t = interpolate(curve, 0.5)
    np.testing.assert_allclose(r, [0.5, 0.0])
    np.testing.assert_allclose(t, [1.0, 0.0])


def test_interpolate_segment_midpoint_is_mean():
    x = np.array([0.0, 0.25, 0.5, 1.0])
    curve = curve_from_graph(x, [0.0, 0.1, -0.2, 0.4])
    r, _ = interpolate(curve, 0.375)
    np.testing.assert_allclose(r, 0.5 * (curve.r[1] + curve.r[2]), rtol=1e-15)


@pytest.mark.parametrize("s", [-1e-9, 1.0 + 1e-9, math.nan])
def test_interpolate_rejects_outside(s):
    curve = polyline_curve([[0, 0], [1, 0]])
    with pytest.raises(ValueError):
        interpolate(curve, s)


def test_polyline_single_segment():
    curve = polyline_curve([[0, 0], [1, 0]])
    np.testing.assert_allclose(curve.r[:, 1], 0)
    np.testing.assert_allclose(curve.t, np.tile([1.0, 0.0], (len(curve), 1)))
    assert curve.length == 1.0


def test_polyline_l_shape_tangents():
    curve = polyline_curve([[0, 0], [0.5, 0], [0.5, 0.5]], [0.5, 0.5])
    before = curve.s < 0.5
    after = curve.s > 0.5
    np.testing.assert_array_equal(curve.t[before], np.tile([1.0, 0.0], (before.sum(), 1)))
    np.testing.assert_array_equal(curve.t[after], np.tile([0.0, 1.0], (after.sum(), 1)))
    # the joint itself carries the incoming tangent; right limit is the outgoing one
    _, t_left = interpolate(curve, 0.5, side="left")
    _, t_right = interpolate(curve, 0.5, side="right")
    np.testing.assert_array_equal(t_left, [1.0, 0.0])
    np.testing.assert_array_equal(t_right, [0.0, 1.0])


def test_purcell_zero_angles_is_straight():
    curve = PurcellShape(0.0, 0.0).curve()
    np.testing.assert_allclose(curve.r[:, 1], 0.0, atol=1e-15)
    np.testing.assert_allclose(curve.t, np.tile([1.0, 0.0], (len(curve), 1)))
    np.testing.assert_allclose(curve.r[-1], [1.0, 0.0], atol=1e-15)


def test_polyline_errors():
    with pytest.raises(ValueError):
        polyline_curve([[0, 0], [0.5, 0], [0.5, 0], [1, 0]])
    with pytest.raises(ValueError):
        polyline_curve([[0, 0], [0.5, 0], [1, 0]], [0.3, 0.7])
    with pytest.raises(ValueError):
        polyline_curve([[0.1, 0], [1, 0]])


def test_shape_curve_invariants_enforced():
    s = np.array([0.0, 0.5, 1.0])
    r = np.array([[0, 0], [0.5, 0], [1, 0]], dtype=float)
    t = np.tile([1.0, 0.0], (3, 1))
    ShapeCurve(s, r, t)
    with pytest.raises(ValueError):
        ShapeCurve(s, r + [0.1, 0], t)
    with pytest.raises(ValueError):
        ShapeCurve(s, r, 1.01 * t)
    with pytest.raises(ValueError):
        ShapeCurve(np.array([0.0, 0.6, 0.5]), r, t)
    curve = ShapeCurve(s, r, t)
    with pytest.raises(ValueError):
        curve.r[0, 0] = 1.0


smooth_coeffs = st.lists(st.floats(-0.5, 0.5), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(smooth_coeffs)
def test_resample_roundtrip_is_second_order(coeffs):
    a, b, c = coeffs

    def f(x):
        return a * np.sin(2 * x) + b * x ** 2 + c * np.cos(3 * x)

    errs = []
    for n in (41, 81):
        x = np.linspace(0, 1, n)
        curve = curve_from_graph(x, f(x))
        fine = resample(curve, np.linspace(0, 1, 4 * n - 3))
        back = resample(fine, x)
        np.testing.assert_allclose(back.r, curve.r, atol=1e-14)
        # interpolation at off-node points converges as ds^2
        mid = 0.5 * (x[1:] + x[:-1])
        r_mid, _ = interpolate(curve, mid)
        errs.append(np.max(np.abs(r_mid[:, 1] - (f(mid) - f(0.0)))))
    if errs[0] > 1e-12:
        assert errs[1] < errs[0] / 3.0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=30))
def test_graph_curve_invariants(ys):
    x = np.linspace(0, 1, len(ys))
    curve = curve_from_graph(x, ys)
    assert np.all(np.diff(curve.r[:, 0]) > 0)
    np.testing.assert_allclose(np.hypot(curve.t[:, 0], curve.t[:, 1]), 1.0, atol=1e-12)
    s_q = np.linspace(0, 1, 37)
    _, t_q = interpolate(curve, s_q)
    np.testing.assert_allclose(np.hypot(t_q[:, 0], t_q[:, 1]), 1.0, atol=1e-12)
