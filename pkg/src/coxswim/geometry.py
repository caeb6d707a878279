"""Planar body curves expressed in the head frame, plus model parameters."""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from ._validation import as_points, frozen, check_positive

TANGENT_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the slender-body force law and its quadrature.

    ``h`` is the slenderness ratio (radius over length), ``delta`` the head
    length as a fraction of the body, ``beta`` the weight of the second-order
    anisotropic correction and ``order`` the truncation order of the
    expansion in ``c = 1/log(h)``.
    """

    h: float = 0.01
    delta: float = 0.05
    beta: float = 0.5
    order: int = 2
    n_quad: int = 200

    def __post_init__(self):
        if not (0.0 < self.h < 1.0):
            raise ValueError(f"h must lie in (0, 1), got {self.h!r}")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must lie in (0, 1), got {self.delta!r}")
        if not math.isfinite(self.beta):
            raise ValueError(f"beta must be finite, got {self.beta!r}")
        if self.order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {self.order!r}")
        if int(self.n_quad) != self.n_quad or self.n_quad < 8:
            raise ValueError(f"n_quad must be an integer >= 8, got {self.n_quad!r}")

    @property
    def c(self):
        return 1.0 / math.log(self.h)

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class ShapeCurve:
    """Sampled planar curve in the head frame.

    ``s`` is the material coordinate on [0, 1], ``r`` the positions and ``t``
    the unit tangents, one row per sample.  ``length`` scales the material
    coordinate to arc length (it multiplies every line integral).  ``corners``
    lists sample indices where the tangent jumps; the stored tangent there is
    the incoming one.
    """

    s: np.ndarray
    r: np.ndarray
    t: np.ndarray
    length: float = 1.0
    corners: tuple = field(default=())

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        if s.ndim != 1 or s.size < 2:
            raise ValueError("a curve needs at least two samples")
        r = as_points(self.r, "r", s.size)
        t = as_points(self.t, "t", s.size)
        if not np.all(np.isfinite(s)) or np.any(np.diff(s) <= 0):
            raise ValueError("material coordinate s must be strictly increasing")
        if s[0] != 0.0 or s[-1] != 1.0:
            raise ValueError("material coordinate must run from 0 to 1")
        if np.any(np.abs(np.hypot(t[:, 0], t[:, 1]) - 1.0) > TANGENT_TOL):
            raise ValueError("tangents must be unit vectors")
        if np.any(r[0] != 0.0):
            raise ValueError("the head tip r(0) must sit at the frame origin")
        corners = tuple(sorted(int(i) for i in self.corners))
        if any(i <= 0 or i >= s.size - 1 for i in corners):
            raise ValueError("corners must be interior sample indices")
        object.__setattr__(self, "s", frozen(s))
        object.__setattr__(self, "r", frozen(r))
        object.__setattr__(self, "t", frozen(t))
        object.__setattr__(self, "length", check_positive(self.length, "length"))
        object.__setattr__(self, "corners", corners)

    def __len__(self):
        return self.s.size

    @property
    def head_tangent(self):
        return self.t[0].copy()

    @property
    def corner_s(self):
        return self.s[list(self.corners)].copy()

    def transformed(self, rotation):
        """Rotate positions and tangents by the 2x2 matrix ``rotation``."""
        rot = np.asarray(rotation, dtype=float)
        t = self.t @ rot.T
        t /= np.hypot(t[:, 0], t[:, 1])[:, None]
        return ShapeCurve(self.s, self.r @ rot.T, t, self.length, self.corners)


def _normalize_rows(v):
    return v / np.hypot(v[:, 0], v[:, 1])[:, None]


def curve_from_graph(x_samples, y_samples, slopes=None):
    """Build a curve from the graph ``y = f(x)`` using ``x`` as material coordinate.

    Slopes default to central differences (one-sided at the ends).  The graph
    is shifted vertically so that the head tip is the frame origin.
    """
    x = np.asarray(x_samples, dtype=float)
    y = np.asarray(y_samples, dtype=float)
    if x.ndim != 1 or y.shape != x.shape:
        raise ValueError("x and y samples must be 1-D arrays of equal length")
    if x.size < 3:
        raise ValueError("a graph curve needs at least 3 samples")
    if np.any(np.diff(x) <= 0):
        raise ValueError("x samples must be strictly increasing")
    if x[0] != 0.0 or x[-1] != 1.0:
        raise ValueError("x samples must run from 0 to 1")
    if slopes is None:
        dydx = np.gradient(y, x, edge_order=1)
    else:
        dydx = np.asarray(slopes, dtype=float)
        if dydx.shape != x.shape:
            raise ValueError("slopes must match the x samples")
    r = np.column_stack([x, y - y[0]])
    t = _normalize_rows(np.column_stack([np.ones_like(dydx), dydx]))
    return ShapeCurve(x, r, t)


def polyline_curve(vertices, fractions=None, samples_per_segment=4):
    """Piecewise-linear curve through ``vertices`` starting at the origin.

    The material coordinate is proportional to arc length.  ``fractions``, if
    given, must agree with the normalized segment lengths.
    """
    verts = as_points(vertices, "vertices")
    if verts.shape[0] < 2:
        raise ValueError("a polyline needs at least two vertices")
    if np.any(verts[0] != 0.0):
        raise ValueError("the first vertex must be the origin (head tip)")
    seg = np.diff(verts, axis=0)
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    if np.any(seg_len <= 1e-14):
        raise ValueError("polyline has a zero-length segment")
    total = float(seg_len.sum())
    frac = seg_len / total
    if fractions is not None:
        given = np.asarray(fractions, dtype=float)
        if given.shape != frac.shape or np.any(given <= 0):
            raise ValueError("need one positive fraction per segment")
        if abs(given.sum() - 1.0) > 1e-9:
            raise ValueError("segment fractions must sum to 1")
        if np.max(np.abs(given - frac)) > 1e-9:
            raise ValueError("fractions disagree with the vertex geometry")
    k = max(1, int(samples_per_segment))
    breaks = np.concatenate([[0.0], np.cumsum(frac)])
    breaks[-1] = 1.0
    s_parts, r_parts, t_parts, corners = [np.zeros(1)], [verts[:1]], [], []
    tang = seg / seg_len[:, None]
    t_parts.append(tang[:1])
    for i in range(seg.shape[0]):
        w = np.arange(1, k + 1) / k
        s_parts.append(breaks[i] + w * (breaks[i + 1] - breaks[i]))
        r_i = verts[i] + w[:, None] * seg[i]
        r_i[-1] = verts[i + 1]
        r_parts.append(r_i)
        t_parts.append(np.repeat(tang[i:i + 1], k, axis=0))
        if i > 0:
            corners.append(i * k)
    s = np.concatenate(s_parts)
    s[-1] = 1.0
    return ShapeCurve(s, np.vstack(r_parts), np.vstack(t_parts), total, tuple(corners))


def _locate(curve, s, side):
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(~np.isfinite(s)) or np.any(s < 0.0) or np.any(s > 1.0):
        raise ValueError("interpolation point outside [0, 1]")
    n = curve.s.size
    if side == "left":
        idx = np.searchsorted(curve.s, s, side="left") - 1
    elif side == "right":
        idx = np.searchsorted(curve.s, s, side="right") - 1
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    idx = np.clip(idx, 0, n - 2)
    w = (s - curve.s[idx]) / (curve.s[idx + 1] - curve.s[idx])
    return s, idx, w


def interpolate_field(curve, values, s, side="left"):
    """Piecewise-linear interpolation of per-sample ``values`` at ``s``."""
    vals = np.asarray(values, dtype=float)
    if vals.shape[0] != curve.s.size:
        raise ValueError("field sampling does not match the curve")
    _, idx, w = _locate(curve, s, side)
    w = w.reshape((-1,) + (1,) * (vals.ndim - 1))
    out = (1.0 - w) * vals[idx] + w * vals[idx + 1]
    # keep node values bit-exact
    out = np.where(w == 0.0, vals[idx], out)
    return np.where(w == 1.0, vals[idx + 1], out)


def interpolate(curve, s, side="left"):
    """Position and unit tangent at material coordinate(s) ``s``.

    ``side`` picks the one-sided limit at sample points where the tangent is
    discontinuous.  Scalar ``s`` gives 2-vectors, array ``s`` gives rows.
    """
    scalar = np.ndim(s) == 0
    s_arr, idx, w = _locate(curve, s, side)
    r = interpolate_field(curve, curve.r, s_arr, side)
    t_left = curve.t[idx].copy()
    if curve.corners:
        at_corner = np.isin(idx, curve.corners)
        t_left[at_corner] = curve.t[idx[at_corner] + 1]
    wc = w[:, None]
    t = _normalize_rows((1.0 - wc) * t_left + wc * curve.t[idx + 1])
    t = np.where(wc == 0.0, t_left, t)
    t = np.where(wc == 1.0, curve.t[idx + 1], t)
    if scalar:
        return r[0], t[0]
    return r, t


def resample(curve, s_new):
    """Curve re-sampled at the new material coordinates ``s_new``."""
    s_new = np.asarray(s_new, dtype=float)
    r, t = interpolate(curve, s_new)
    r = r - r[0]
    return ShapeCurve(s_new, r, t, curve.length)


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])
