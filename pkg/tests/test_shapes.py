import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from coxswim.shapes import (BumpParams, BumpProgram, PurcellProgram, PurcellShape,
                            ReversedProgram, TabulatedProgram, bump, bump_program, bump_slope,
                            bump_velocity, constant, sinusoid, square_loop)

from oracles import central_difference

PEAK = 0.3059023205018258  # 1e6 * exp(-15)

joint = st.floats(-2.5, 2.5)


def _sympy_bump():
    x, t, c1, c2, c3 = sp.symbols("x t c1 c2 c3", real=True)
    z = x - c3 * t
    psi = c1 * sp.exp(-c2 / (1 - z ** 2))
    args = (x, t, c1, c2, c3)
    return (sp.lambdify(args, psi), sp.lambdify(args, sp.diff(psi, t)),
            sp.lambdify(args, sp.diff(psi, x)))


SYM_PSI, SYM_PSI_T, SYM_PSI_X = _sympy_bump()


def test_bump_peak_value():
    p = BumpParams()
    assert bump(0.0, 0.0, p) == pytest.approx(PEAK, rel=1e-15)
    assert bump(0.5, 7.5, p) == pytest.approx(PEAK, rel=1e-15)
    assert bump_velocity(0.0, 0.0, p) == 0.0
    assert bump_slope(0.0, 0.0, p) == 0.0
    assert isinstance(bump(0.1, 0.0, p), float)


def test_bump_support_follows_the_wave():
    p = BumpParams()
    t = 6.0
    centre = p.c3 * t
    x = np.array([centre - 1.0, centre - 1.0 + 1e-6, centre + 0.9, centre + 1.0, 2.0])
    vals = bump(x, t, p)
    assert vals[0] == 0.0 and vals[3] == 0.0 and vals[4] == 0.0
    assert vals[1] >= 0.0 and vals[2] > 0.0
    assert np.all(bump_velocity(x[[0, 3, 4]], t, p) == 0.0)


@pytest.mark.parametrize("c1, c2, c3", [(1e6, 15.0, 1 / 15), (2.0, 1.0, 0.3), (1e3, 7.5, 0.1)])
def test_bump_derivatives_match_sympy(c1, c2, c3):
    p = BumpParams(c1, c2, c3)
    rng = np.random.default_rng(3)
    t = rng.uniform(0, 10, 50)
    x = c3 * t + rng.uniform(-0.95, 0.95, 50)
    for fn, ref in ((bump, SYM_PSI), (bump_velocity, SYM_PSI_T), (bump_slope, SYM_PSI_X)):
        got = np.array([fn(xi, ti, p) for xi, ti in zip(x, t)])
        want = np.array([float(ref(xi, ti, c1, c2, c3)) for xi, ti in zip(x, t)])
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-300)


def test_bump_velocity_matches_finite_differences():
    p = BumpParams(1.0, 2.0, 0.25)
    x = np.linspace(-0.6, 0.9, 31)
    fd = central_difference(lambda t: bump(x, t, p), 1.0, 1e-6)
    np.testing.assert_allclose(bump_velocity(x, 1.0, p), fd, rtol=1e-7, atol=1e-12)
    fd_x = central_difference(lambda xx: bump(xx, 1.0, p), x, 1e-6)
    np.testing.assert_allclose(bump_slope(x, 1.0, p), fd_x, rtol=1e-7, atol=1e-12)


def test_travelling_wave_relation():
    # Psi depends on x - c3 t only, so Psi_t = -c3 Psi_x
    p = BumpParams()
    x = np.linspace(0, 1, 101)
    np.testing.assert_allclose(bump_velocity(x, 4.0, p), -p.c3 * bump_slope(x, 4.0, p),
                               rtol=1e-14, atol=1e-300)


def test_bump_params_validation():
    with pytest.raises(ValueError):
        BumpParams(c1=-1.0)
    with pytest.raises(ValueError):
        BumpParams(c2=0.0)
    with pytest.raises(ValueError):
        BumpParams(c3=math.inf)


def test_bump_program_shape_and_velocity():
    prog = bump_program(BumpParams(), 101)
    curve, u = prog(7.5)
    assert len(curve) == 101 and u.shape == (101, 2)
    np.testing.assert_array_equal(u[:, 0], 0.0)
    np.testing.assert_array_equal(curve.r[:, 0], np.linspace(0, 1, 101))
    # the body keeps its x-extent: no stretching of the graph parameter
    assert curve.r[-1, 0] == 1.0
    i = np.argmax(curve.r[:, 1])
    assert curve.r[i, 0] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        BumpProgram(n_samples=2)


def test_zero_amplitude_bump_is_straight():
    curve, u = BumpProgram(BumpParams(c1=0.0))(3.0)
    np.testing.assert_array_equal(curve.r[:, 1], 0.0)
    np.testing.assert_array_equal(u, 0.0)


def test_purcell_vertices():
    v = PurcellShape(math.pi / 2, -math.pi / 2).vertices()
    np.testing.assert_allclose(v, [[0, 0], [1 / 3, 0], [1 / 3, 1 / 3], [2 / 3, 1 / 3]],
                               atol=1e-15)
    with pytest.raises(ValueError):
        PurcellShape(math.pi, 0.0)
    with pytest.raises(ValueError):
        PurcellShape(0.0, 0.0, (0.5, 0.5, 0.1))


@settings(max_examples=40, deadline=None)
@given(joint, joint, st.floats(-2, 2), st.floats(-2, 2))
def test_purcell_deformation_velocity_is_shape_derivative(a1, a2, r1, r2):
    shape = PurcellShape(a1, a2)
    curve = shape.curve(3)
    u = shape.deformation_velocity(curve, r1, r2)

    def positions(tau):
        return PurcellShape(a1 + r1 * tau, a2 + r2 * tau).curve(3).r

    fd = central_difference(positions, 0.0, 1e-6)
    np.testing.assert_allclose(u, fd, atol=1e-8)
    # the head link never moves relative to the head frame
    np.testing.assert_array_equal(u[curve.s <= 1 / 3], 0.0)


def test_angle_paths():
    path = sinusoid(0.5, 0.25, math.pi / 2, offset=0.1)
    angle, rate = path(0.0)
    assert angle == pytest.approx(0.6)
    assert rate == pytest.approx(0.0, abs=1e-15)
    fd = central_difference(lambda t: path(t)[0], 1.3, 1e-6)
    assert path(1.3)[1] == pytest.approx(fd, rel=1e-8)
    assert constant(0.4)(12.0) == (0.4, 0.0)


def test_square_loop_is_closed_and_consistent():
    p1, p2 = square_loop((0.2, -0.1), 0.4, 4.0)
    start = (p1(0.0)[0], p2(0.0)[0])
    assert start == pytest.approx((0.0, -0.3))
    assert (p1(4.0)[0], p2(4.0)[0]) == pytest.approx(start)
    corners = [(p1(t)[0], p2(t)[0]) for t in (0.0, 1.0, 2.0, 3.0)]
    np.testing.assert_allclose(corners, [(0.0, -0.3), (0.4, -0.3), (0.4, 0.1), (0.0, 0.1)],
                               atol=1e-15)
    for t in (0.5, 1.5, 2.5, 3.5):
        fd1 = central_difference(lambda s: p1(s)[0], t, 1e-6)
        fd2 = central_difference(lambda s: p2(s)[0], t, 1e-6)
        assert (p1(t)[1], p2(t)[1]) == pytest.approx((fd1, fd2), abs=1e-8)


def test_purcell_program_and_reversal():
    prog = PurcellProgram(sinusoid(1.0, 0.25), sinusoid(1.0, 0.25, math.pi / 2))
    rev = ReversedProgram(prog, 4.0)
    c_f, u_f = prog(1.0)
    c_r, u_r = rev(3.0)
    np.testing.assert_array_equal(c_f.r, c_r.r)
    np.testing.assert_array_equal(u_r, -u_f)
    shape, r1, r2 = prog.shape_at(1.0)
    assert shape.alpha1 == pytest.approx(1.0) and r1 == pytest.approx(0.0, abs=1e-15)


def _write_table(path, rows):
    path.write_text("t,x,y\n" + "".join(f"{t},{x},{y}\n" for t, x, y in rows))


def test_tabulated_program_from_csv(tmp_path):
    xs = (0.0, 0.5, 1.0)
    rows = [(0.0, x, 0.0) for x in xs] + [(2.0, x, 0.1 * x) for x in xs]
    f = tmp_path / "frames.csv"
    _write_table(f, rows)
    prog = TabulatedProgram.from_csv(f)
    curve, u = prog(1.0)
    np.testing.assert_allclose(curve.r[:, 1], [0.0, 0.025, 0.05])
    np.testing.assert_allclose(u[:, 1], [0.0, 0.025, 0.05])
    with pytest.raises(ValueError):
        prog(2.5)


def test_tabulated_csv_errors(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("t,x,y\n0,0,0\n0,oops,0\n")
    with pytest.raises(ValueError, match=":3:"):
        TabulatedProgram.from_csv(f)
    f.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="t,x,y"):
        TabulatedProgram.from_csv(f)
    _write_table(f, [(0, 0, 0), (0, 0.5, 0), (0, 1, 0), (1, 0, 0), (1, 0.4, 0), (1, 1, 0)])
    with pytest.raises(ValueError, match="x grid"):
        TabulatedProgram.from_csv(f)
    with pytest.raises(ValueError):
        TabulatedProgram([0.0], [0.0, 0.5, 1.0], [[0, 0, 0]])
