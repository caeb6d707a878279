"""Pose reconstruction on SE(2) from the body-velocity signal."""

from dataclasses import dataclass
import math

import numpy as np

from .solver import BodyVelocity, SingularSystemError, body_velocity, COND_CAP

SMALL_ANGLE = 1e-8


def wrap_angle(theta):
    """Map an angle into (-pi, pi]."""
    w = math.remainder(theta, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


@dataclass(frozen=True)
class Pose:
    """Head-tip placement in the world: position ``(x, y)``, heading ``theta``."""

    x: float = 0.0
    y: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        vals = (float(self.x), float(self.y), float(self.theta))
        if not all(math.isfinite(v) for v in vals):
            raise FloatingPointError("pose has non-finite components")
        object.__setattr__(self, "x", vals[0])
        object.__setattr__(self, "y", vals[1])
        object.__setattr__(self, "theta", wrap_angle(vals[2]))

    @classmethod
    def identity(cls):
        return cls()

    @property
    def rotation(self):
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    def compose(self, other):
        """Group product ``self * other``."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Pose(self.x + c * other.x - s * other.y,
                    self.y + s * other.x + c * other.y,
                    self.theta + other.theta)

    def inverse(self):
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Pose(-(c * self.x + s * self.y), s * self.x - c * self.y, -self.theta)

    def act(self, points):
        pts = np.asarray(points, dtype=float)
        return pts @ self.rotation.T + np.array([self.x, self.y])

    def as_array(self):
        return np.array([self.x, self.y, self.theta])

    def as_matrix(self):
        m = np.eye(3)
        m[:2, :2] = self.rotation
        m[:2, 2] = (self.x, self.y)
        return m


def _v_coefficients(w):
    """``sin(w)/w`` and ``(1 - cos(w))/w``, the latter without cancellation."""
    if abs(w) < SMALL_ANGLE:
        # second-order series; exact for w == 0
        return 1.0 - w * w / 6.0, w / 2.0
    half = math.sin(0.5 * w)
    return math.sin(w) / w, 2.0 * half * half / w


def se2_exp(twist):
    """Group exponential of ``(vx, vy, omega)``."""
    vx, vy, w = (float(v) for v in twist)
    a, b = _v_coefficients(w)
    return Pose(a * vx - b * vy, b * vx + a * vy, w)


def se2_log(g):
    """Inverse of :func:`se2_exp` for ``|theta| < pi``."""
    w = g.theta
    a, b = _v_coefficients(w)
    det = a * a + b * b
    return np.array([(a * g.x + b * g.y) / det, (-b * g.x + a * g.y) / det, w])


def step_pose(g, xi, dt):
    """Advance ``g`` by the frozen body velocity ``xi`` for ``dt``: g exp(dt xi)."""
    if not (dt > 0 and math.isfinite(dt)):
        raise ValueError(f"dt must be positive, got {dt!r}")
    arr = xi.as_array() if isinstance(xi, BodyVelocity) else np.asarray(xi, dtype=float)
    return g.compose(se2_exp(dt * arr))


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled run: one row per time ``t[k] = k dt``.

    ``xi[k]`` is the body velocity applied over step k (sampled at ``t[k]``,
    or at the step midpoint in midpoint mode); the last row holds the
    velocity at ``t_end``.  ``residual[k]`` is the balance residual of that
    solve.
    """

    t: np.ndarray
    xi: np.ndarray
    pose: np.ndarray
    theta_unwrapped: np.ndarray
    residual: np.ndarray

    def __len__(self):
        return self.t.size

    @property
    def dt(self):
        return float(self.t[1] - self.t[0])

    def pose_at(self, k):
        return Pose(*self.pose[k])

    @property
    def final_pose(self):
        return self.pose_at(-1)


def _step_count(t_end, dt):
    if not (t_end > 0 and dt > 0):
        raise ValueError("t_end and dt must be positive")
    n = round(t_end / dt)
    if n < 1 or abs(n * dt - t_end) > 1e-9 * max(1.0, t_end):
        raise ValueError(f"t_end={t_end} is not an integer multiple of dt={dt}")
    return n


def simulate(program, params, t_end, dt, mode="paper", sampling="left",
             start=None, cond_cap=COND_CAP):
    """Integrate the head pose under a shape program.

    Each step freezes the body velocity obtained from the program at the
    step's left endpoint (``sampling="left"``) or midpoint
    (``sampling="midpoint"``) and applies the exact group exponential.
    """
    if sampling not in ("left", "midpoint"):
        raise ValueError(f"sampling must be 'left' or 'midpoint', got {sampling!r}")
    n = _step_count(t_end, dt)
    times = np.arange(n + 1) * dt

    def solve(t):
        curve, u = program(t)
        try:
            return body_velocity(curve, u, params, mode, cond_cap)
        except SingularSystemError as err:
            raise SingularSystemError(str(err), err.condition, t) from err

    g = start if start is not None else Pose.identity()
    xis = np.empty((n + 1, 3))
    poses = np.empty((n + 1, 3))
    unwrapped = np.empty(n + 1)
    residuals = np.empty(n + 1)
    theta_u = g.theta
    for k, t in enumerate(times):
        offset = 0.5 * dt if sampling == "midpoint" and k < n else 0.0
        xi, res = solve(t + offset)
        xis[k] = xi.as_array()
        residuals[k] = res
        poses[k] = g.as_array()
        unwrapped[k] = theta_u
        if k < n:
            g = step_pose(g, xi, dt)
            theta_u += xi.omega0 * dt
    return Trajectory(times, xis, poses, unwrapped, residuals)


def reconstruct_world(curve, g):
    """World-frame positions of every curve sample under placement ``g``."""
    return g.act(curve.r)
