"""Local connection, curvature and bracket filtration of the Purcell swimmer.

Body velocity obeys ``xi = -A(alpha) alpha_dot`` where the 3x2 local
connection ``A`` is obtained from the full-coupling balance.  Vectors of
se(2) are ordered (x-translation, y-translation, rotation).
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .cox import full_resistance, tail_wrench
from .dynamics import simulate, se2_log
from .shapes import PurcellShape, PurcellProgram, square_loop
from .solver import solve_head_velocity, SingularSystemError, COND_CAP

RANK_RTOL = 1e-8
CURVATURE_STEP = 1e-5
LIE_STEP = 1e-3
LIE_INNER_STEP = 1e-4


def se2_bracket(a, b):
    """Matrix commutator on se(2): [e3, e1] = e2, [e3, e2] = -e1, [e1, e2] = 0."""
    ax, ay, aw = a
    bx, by, bw = b
    return np.array([-aw * by + bw * ay, aw * bx - bw * ax, 0.0])


def local_connection(shape, params, samples_per_link=2, cond_cap=COND_CAP):
    """3x2 matrix whose column j is minus the body velocity for unit rate j."""
    curve = shape.curve(samples_per_link)
    R = full_resistance(curve, params)
    cols = []
    for rates in ((1.0, 0.0), (0.0, 1.0)):
        W = tail_wrench(curve, shape.deformation_velocity(curve, *rates), params, start=0.0)
        cols.append(-solve_head_velocity(R, W, cond_cap=cond_cap).as_array())
    return np.column_stack(cols)


def purcell_connection(params, fractions=(1 / 3, 1 / 3, 1 / 3), length=1.0):
    """Connection as a function of the shape coordinates ``(alpha1, alpha2)``."""

    def conn(alpha):
        return local_connection(PurcellShape(alpha[0], alpha[1], fractions, length), params)

    return conn


def _partial(fn, x, k, step):
    e = np.zeros(len(x))
    e[k] = step
    return (fn(x + e) - fn(x - e)) / (2.0 * step)


def curvature(conn, x, step=CURVATURE_STEP):
    """``DA(e1, e2) = d1 A(e2) - d2 A(e1) - [A(e1), A(e2)]`` by central differences."""
    if not step > 1e-12:
        raise ValueError(f"finite-difference step {step!r} is too small")
    x = np.asarray(x, dtype=float)
    A = conn(x)
    d1 = _partial(conn, x, 0, step)
    d2 = _partial(conn, x, 1, step)
    return d1[:, 1] - d2[:, 0] - se2_bracket(A[:, 0], A[:, 1])


def connection_curvature(shape, params, step=CURVATURE_STEP):
    conn = purcell_connection(params, shape.fractions, shape.length)
    return curvature(conn, (shape.alpha1, shape.alpha2), step)


def numerical_rank(vectors, rtol=RANK_RTOL):
    """Rank and singular values of the span of ``vectors``."""
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        return 0, np.zeros(0)
    sv = np.linalg.svd(np.vstack(vecs), compute_uv=False)
    if sv[0] == 0.0:
        return 0, sv
    return int(np.sum(sv > rtol * sv[0])), sv


@dataclass
class Filtration:
    """Generators of h1, h2, h3 at one shape and the ranks of their sums.

    ``h3_lie`` holds ``L_Z DA - [A(Z), DA]`` for Z = e1, e2 and
    ``h3_bracket`` holds ``[DA, DA]``; ``h3`` is their union.
    """

    point: np.ndarray
    h1: list
    h2: list
    h3_lie: list = field(default_factory=list)
    h3_bracket: list = field(default_factory=list)
    rtol: float = RANK_RTOL

    @property
    def h3(self):
        return self.h3_lie + self.h3_bracket

    def rank(self, *levels):
        vecs = [v for lvl in levels for v in getattr(self, lvl)]
        return numerical_rank(vecs, self.rtol)[0]

    def singular_values(self, *levels):
        return numerical_rank([v for lvl in levels for v in getattr(self, lvl)], self.rtol)[1]

    @property
    def rank_weak(self):
        return self.rank("h1", "h2", "h3")

    @property
    def rank_strong(self):
        return self.rank("h2", "h3")

    @property
    def weak(self):
        return self.rank_weak == 3

    @property
    def strong(self):
        return self.rank_strong == 3


def filtration_from_connection(conn, x, depth=3, rtol=RANK_RTOL,
                               step=CURVATURE_STEP, lie_step=LIE_STEP,
                               inner_step=LIE_INNER_STEP):
    """Filtration h1..h_depth (depth <= 3) of a 2-D shape-space connection."""
    if depth not in (1, 2, 3):
        raise ValueError(f"depth must be 1, 2 or 3, got {depth!r}")
    x = np.asarray(x, dtype=float)
    A = conn(x)
    filt = Filtration(x, [A[:, 0], A[:, 1]], [], rtol=rtol)
    if depth == 1:
        return filt
    DA = curvature(conn, x, step)
    filt.h2 = [DA]
    if depth == 2:
        return filt
    def da_field(y):
        return curvature(conn, y, inner_step)
    for k in range(2):
        lie = _partial(da_field, x, k, lie_step)
        filt.h3_lie.append(lie - se2_bracket(A[:, k], DA))
    # only one curvature generator exists on a 2-D shape space
    filt.h3_bracket.append(se2_bracket(DA, DA))
    return filt


def filtration(shape, params, depth=3, **kwargs):
    conn = purcell_connection(params, shape.fractions, shape.length)
    return filtration_from_connection(conn, (shape.alpha1, shape.alpha2), depth, **kwargs)


@dataclass(frozen=True)
class ReportRow:
    alpha1: float
    alpha2: float
    rank_weak: int
    rank_strong: int
    weak: bool
    strong: bool
    sigma_min: float
    error: str = ""


def controllability_report(alpha1_values, alpha2_values, params, **kwargs):
    """Rank conditions on the grid ``alpha1_values x alpha2_values``.

    Points where the evaluation fails are reported with ranks of -1 and the
    error message instead of aborting the scan.
    """
    rows = []
    for a1 in alpha1_values:
        for a2 in alpha2_values:
            try:
                filt = filtration(PurcellShape(float(a1), float(a2)), params, **kwargs)
                sv = filt.singular_values("h2", "h3")
                rows.append(ReportRow(float(a1), float(a2), filt.rank_weak, filt.rank_strong,
                                      filt.weak, filt.strong, float(sv[-1] / sv[0]) if sv[0] else 0.0))
            except (ValueError, SingularSystemError, FloatingPointError) as err:
                rows.append(ReportRow(float(a1), float(a2), -1, -1, False, False,
                                      math.nan, str(err)))
    return rows


def loop_holonomy(center, side, params, steps_per_edge=100):
    """Net body displacement (as an se(2) vector) after a small square stroke.

    The stroke runs counter-clockwise around ``center`` in shape space; to
    leading order the result is ``-side**2 * DA(e1, e2)``.
    """
    period = 4.0
    path1, path2 = square_loop(center, side, period)
    program = PurcellProgram(path1, path2, samples_per_link=2)
    dt = 1.0 / steps_per_edge
    traj = simulate(program, params, period, dt, mode="full", sampling="midpoint")
    return se2_log(traj.final_pose)
