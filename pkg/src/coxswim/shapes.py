"""Built-in shape programs.

A shape program is any callable ``program(t) -> (curve, u_star)`` returning
the body shape in the head frame and the prescribed velocity of every curve
sample at time ``t``.
"""

from dataclasses import dataclass, field
import csv
import math

import numpy as np

from .geometry import curve_from_graph, polyline_curve
from .cox import perp


@dataclass(frozen=True)
class BumpParams:
    """Travelling bump ``c1 exp(-c2 / (1 - z^2))`` with ``z = x - c3 t``."""

    c1: float = 1e6
    c2: float = 15.0
    c3: float = 1.0 / 15.0

    def __post_init__(self):
        if not (self.c1 >= 0 and math.isfinite(self.c1)):
            raise ValueError(f"c1 must be non-negative, got {self.c1!r}")
        if not (self.c2 > 0 and math.isfinite(self.c2)):
            raise ValueError(f"c2 must be positive, got {self.c2!r}")
        if not (self.c3 >= 0 and math.isfinite(self.c3)):
            raise ValueError(f"c3 must be non-negative, got {self.c3!r}")


def _bump_parts(x, t, p):
    z = np.asarray(x, dtype=float) - p.c3 * t
    inside = np.abs(z) < 1.0
    q = np.where(inside, 1.0 - z * z, 1.0)
    with np.errstate(under="ignore"):
        psi = np.where(inside, p.c1 * np.exp(-p.c2 / q), 0.0)
    return z, q, psi


def _scalar_or_array(x, value):
    return float(value) if np.ndim(x) == 0 else value


def bump(x, t, p):
    """Transverse displacement of the body at abscissa ``x`` and time ``t``."""
    return _scalar_or_array(x, _bump_parts(x, t, p)[2])


def bump_velocity(x, t, p):
    """Time derivative of :func:`bump` (analytic)."""
    z, q, psi = _bump_parts(x, t, p)
    return _scalar_or_array(x, psi * 2.0 * p.c2 * p.c3 * z / (q * q))


def bump_slope(x, t, p):
    """Spatial derivative of :func:`bump` (analytic)."""
    z, q, psi = _bump_parts(x, t, p)
    return _scalar_or_array(x, psi * -2.0 * p.c2 * z / (q * q))


class BumpProgram:
    """Body shaped as the graph of the travelling bump.

    ``grid`` overrides the default uniform abscissae; it must run from 0 to 1.
    """

    def __init__(self, params=BumpParams(), n_samples=201, grid=None):
        self.params = params
        if grid is None:
            if n_samples < 3:
                raise ValueError("need at least 3 samples")
            grid = np.linspace(0.0, 1.0, int(n_samples))
        self.x = np.asarray(grid, dtype=float)

    def __call__(self, t):
        p = self.params
        curve = curve_from_graph(self.x, bump(self.x, t, p), bump_slope(self.x, t, p))
        u = np.zeros((self.x.size, 2))
        u[:, 1] = bump_velocity(self.x, t, p)
        return curve, u


def bump_program(p, n_samples=201, grid=None):
    return BumpProgram(p, n_samples, grid)


@dataclass(frozen=True)
class PurcellShape:
    """Three-link swimmer with joint angles ``alpha1``, ``alpha2``.

    The first (head) link lies along +x from the origin; ``fractions`` give the
    link lengths relative to ``length``.
    """

    alpha1: float
    alpha2: float
    fractions: tuple = field(default=(1 / 3, 1 / 3, 1 / 3))
    length: float = 1.0

    def __post_init__(self):
        for a in (self.alpha1, self.alpha2):
            if not (-math.pi < a < math.pi):
                raise ValueError(f"joint angle {a!r} outside (-pi, pi)")
        fr = tuple(float(f) for f in self.fractions)
        if len(fr) != 3 or min(fr) <= 0 or abs(sum(fr) - 1.0) > 1e-9:
            raise ValueError("need three positive link fractions summing to 1")
        object.__setattr__(self, "fractions", fr)

    def vertices(self):
        l1, l2, l3 = (f * self.length for f in self.fractions)
        a, b = self.alpha1, self.alpha1 + self.alpha2
        p1 = np.array([l1, 0.0])
        p2 = p1 + l2 * np.array([math.cos(a), math.sin(a)])
        p3 = p2 + l3 * np.array([math.cos(b), math.sin(b)])
        return np.array([[0.0, 0.0], p1, p2, p3])

    def curve(self, samples_per_link=4):
        return polyline_curve(self.vertices(), self.fractions, samples_per_link)

    def deformation_velocity(self, curve, rate1, rate2):
        """Velocity of each sample relative to the head link."""
        verts = self.vertices()
        s1 = self.fractions[0]
        s2 = s1 + self.fractions[1]
        beyond1 = (curve.s > s1 + 1e-12)[:, None]
        beyond2 = (curve.s > s2 + 1e-12)[:, None]
        u = rate1 * beyond1 * perp(curve.r - verts[1])
        u = u + rate2 * beyond2 * perp(curve.r - verts[2])
        return u


class AnglePath:
    """Joint-angle trajectory: ``path(t) -> (angle, rate)``."""

    def __init__(self, angle, rate):
        self.angle = angle
        self.rate = rate

    def __call__(self, t):
        return float(self.angle(t)), float(self.rate(t))


def sinusoid(amplitude, frequency, phase=0.0, offset=0.0):
    w = 2.0 * math.pi * frequency
    return AnglePath(lambda t: offset + amplitude * math.sin(w * t + phase),
                     lambda t: amplitude * w * math.cos(w * t + phase))


def constant(angle):
    return AnglePath(lambda t: angle, lambda t: 0.0)


def square_loop(center, side, period):
    """Counter-clockwise square in the (alpha1, alpha2) plane.

    Starts at the lower-left corner; each edge takes ``period / 4``.
    """
    c1, c2 = center
    h = side / 2.0
    edge = period / 4.0
    speed = side / edge

    def phase(t):
        k = min(max(int(math.floor(t / edge)), 0), 3)
        return k, min(max(t - k * edge, 0.0), edge)

    def a1(t):
        k, u = phase(t)
        return c1 + [-h + speed * u, h, h - speed * u, -h][k]

    def a2(t):
        k, u = phase(t)
        return c2 + [-h, -h + speed * u, h, h - speed * u][k]

    def r1(t):
        return [speed, 0.0, -speed, 0.0][phase(t)[0]]

    def r2(t):
        return [0.0, speed, 0.0, -speed][phase(t)[0]]

    return AnglePath(a1, r1), AnglePath(a2, r2)


class PurcellProgram:
    """Purcell swimmer driven by two joint-angle paths."""

    def __init__(self, path1, path2, fractions=(1 / 3, 1 / 3, 1 / 3),
                 samples_per_link=4, length=1.0):
        self.path1 = path1
        self.path2 = path2
        self.fractions = fractions
        self.samples_per_link = samples_per_link
        self.length = length

    def shape_at(self, t):
        (a1, r1), (a2, r2) = self.path1(t), self.path2(t)
        return PurcellShape(a1, a2, self.fractions, self.length), r1, r2

    def __call__(self, t):
        shape, r1, r2 = self.shape_at(t)
        curve = shape.curve(self.samples_per_link)
        return curve, shape.deformation_velocity(curve, r1, r2)


def purcell_program(path1, path2, **kwargs):
    return PurcellProgram(path1, path2, **kwargs)


class ReversedProgram:
    """Replay ``program`` backwards in time over [0, duration]."""

    def __init__(self, program, duration):
        self.program = program
        self.duration = float(duration)

    def __call__(self, t):
        curve, u = self.program(self.duration - t)
        return curve, -u


class TabulatedProgram:
    """Graph shapes ``y(x)`` tabulated at increasing times.

    Between frames the shape is interpolated linearly in time and the shape
    velocity is the frame-to-frame difference quotient.
    """

    def __init__(self, times, x, frames):
        self.times = np.asarray(times, dtype=float)
        self.x = np.asarray(x, dtype=float)
        self.frames = np.asarray(frames, dtype=float)
        if self.times.ndim != 1 or self.times.size < 2 or np.any(np.diff(self.times) <= 0):
            raise ValueError("need at least two strictly increasing frame times")
        if self.frames.shape != (self.times.size, self.x.size):
            raise ValueError("frames must have shape (n_times, n_x)")

    def __call__(self, t):
        k = int(np.clip(np.searchsorted(self.times, t, side="right") - 1,
                        0, self.times.size - 2))
        t0, t1 = self.times[k], self.times[k + 1]
        w = (t - t0) / (t1 - t0)
        if w < -1e-12 or w > 1 + 1e-12:
            raise ValueError(f"time {t} outside the tabulated range")
        y = (1 - w) * self.frames[k] + w * self.frames[k + 1]
        u = np.zeros((self.x.size, 2))
        u[:, 1] = (self.frames[k + 1] - self.frames[k]) / (t1 - t0)
        return curve_from_graph(self.x, y), u

    @classmethod
    def from_csv(cls, path):
        """Read a long-format CSV with header ``t,x,y``."""
        rows = {}
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"t", "x", "y"} <= set(reader.fieldnames):
                raise ValueError(f"{path}: expected columns t,x,y")
            for lineno, row in enumerate(reader, start=2):
                try:
                    t, x, y = float(row["t"]), float(row["x"]), float(row["y"])
                except (TypeError, ValueError):
                    raise ValueError(f"{path}:{lineno}: non-numeric entry") from None
                rows.setdefault(t, []).append((x, y))
        times = sorted(rows)
        xs = [x for x, _ in sorted(rows[times[0]])] if times else []
        frames = []
        for t in times:
            pts = sorted(rows[t])
            if [x for x, _ in pts] != xs:
                raise ValueError(f"{path}: frame t={t} uses a different x grid")
            frames.append([y for _, y in pts])
        return cls(times, xs, frames)
