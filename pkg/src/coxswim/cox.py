"""Slender-body (Cox) drag law and the force/moment integrals built on it.

Every vector lives in the head frame.  With ``c = 1/log(h) < 0`` the local
force density on a body element moving with velocity ``u`` through still
fluid is ``f = L(t) u`` where

    L = 2*pi * [ (-c - log(2) c^2 g) (T - 2I) + beta c^2 g (3T - 2I) ],

``T`` is the tangent outer product and ``g`` is 1 for the second-order law
and 0 otherwise.
"""

from dataclasses import dataclass
import math

import numpy as np

from ._validation import as_unit_vec2, as_points
from .geometry import interpolate, interpolate_field

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Wrench2D:
    """Planar force ``f`` and z-moment ``m`` about the head-frame origin."""

    f: np.ndarray
    m: float

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float).reshape(2)
        if not (np.all(np.isfinite(f)) and math.isfinite(self.m)):
            raise FloatingPointError("wrench has non-finite components")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "m", float(self.m))

    @classmethod
    def from_array(cls, w):
        return cls(np.asarray(w[:2], dtype=float), float(w[2]))

    def as_array(self):
        return np.array([self.f[0], self.f[1], self.m])

    def __add__(self, other):
        return Wrench2D(self.f + other.f, self.m + other.m)

    def __mul__(self, k):
        return Wrench2D(self.f * k, self.m * k)

    __rmul__ = __mul__


def drag_coefficients(params):
    """Weights ``(a, b)`` of the ``(T - 2I)`` and ``(3T - 2I)`` terms, before 2*pi."""
    c = params.c
    g = 1.0 if params.order == 2 else 0.0
    return -c - math.log(2.0) * c * c * g, params.beta * c * c * g


def drag_eigenvalues(params):
    """Tangential and normal eigenvalues of the drag operator."""
    a, b = drag_coefficients(params)
    return TWO_PI * (-a + b), TWO_PI * (-2.0 * a - 2.0 * b)


def drag_operator(t_hat, params):
    """2x2 symmetric matrix taking a local velocity to the force density."""
    t = as_unit_vec2(t_hat, "t_hat")
    return _drag_matrices(t[None, :], params)[0]


def _drag_matrices(t, params):
    a, b = drag_coefficients(params)
    T = t[:, :, None] * t[:, None, :]
    eye = np.eye(2)
    return TWO_PI * (a * (T - 2.0 * eye) + b * (3.0 * T - 2.0 * eye))


def cross2(r, f):
    """z-component of the planar cross product, row-wise."""
    return r[..., 0] * f[..., 1] - r[..., 1] * f[..., 0]


def perp(r):
    """Rotate by +90 degrees: the velocity of ``r`` under unit spin about z."""
    r = np.asarray(r, dtype=float)
    return np.stack([-r[..., 1], r[..., 0]], axis=-1)


def panel_count(a, b, n_quad):
    """Even number of Simpson subintervals covering [a, b]."""
    n = math.ceil(n_quad * (b - a) - 1e-9)
    n += n % 2
    return max(2, n)


def simpson_rule(a, b, n):
    """Nodes and weights of composite Simpson with ``n`` (even) subintervals."""
    if n < 2 or n % 2:
        raise ValueError(f"Simpson needs an even number >= 2 of subintervals, got {n}")
    nodes = np.linspace(a, b, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return nodes, w * (b - a) / (3.0 * n)


def quadrature_nodes(curve, a, b, n_quad):
    """Simpson nodes on [a, b] split at the curve's corners.

    Returns ``(s, weights, sides)`` where ``sides`` marks nodes that must be
    evaluated as right-hand limits (the first node of each piece).
    """
    cuts = [a] + [x for x in curve.corner_s if a < x < b] + [b]
    s_all, w_all, right = [], [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        nodes, w = simpson_rule(lo, hi, panel_count(lo, hi, n_quad))
        s_all.append(nodes)
        w_all.append(w)
        flag = np.zeros(nodes.size, dtype=bool)
        flag[0] = True
        right.append(flag)
    return np.concatenate(s_all), np.concatenate(w_all) * curve.length, np.concatenate(right)


def _evaluate(curve, s, right):
    r = np.empty((s.size, 2))
    t = np.empty((s.size, 2))
    r[~right], t[~right] = interpolate(curve, s[~right], side="left")
    r[right], t[right] = interpolate(curve, s[right], side="right")
    return r, t


def tail_wrench(curve, u_star, params, start=None):
    """Force and moment of the fluid on the body portion (start, 1].

    ``u_star`` holds one head-frame velocity per curve sample.  ``start``
    defaults to the head length ``params.delta``; pass 0 to integrate the
    whole body.
    """
    u = as_points(u_star, "u_star")
    if u.shape[0] != len(curve):
        raise ValueError(
            f"u_star has {u.shape[0]} samples but the curve has {len(curve)}")
    a = params.delta if start is None else float(start)
    if not (0.0 <= a < 1.0):
        raise ValueError(f"integration start must lie in [0, 1), got {a}")
    if not np.any(u):
        # still fluid, no deformation: the integrand vanishes identically
        return Wrench2D(np.zeros(2), 0.0)
    s, w, right = quadrature_nodes(curve, a, 1.0, params.n_quad)
    r, t = _evaluate(curve, s, right)
    u_nodes = interpolate_field(curve, u, s)
    f = np.einsum("nij,nj->ni", _drag_matrices(t, params), u_nodes)
    return Wrench2D(w @ f, float(w @ cross2(r, f)))


def _rigid_resistance(r, t, w, params):
    # velocity of a body point under rigid body velocity (v, omega): G @ xi
    n = r.shape[0]
    G = np.zeros((n, 2, 3))
    G[:, 0, 0] = 1.0
    G[:, 1, 1] = 1.0
    G[:, :, 2] = perp(r)
    LG = np.einsum("nij,njk->nik", _drag_matrices(t, params), G)
    rows = np.empty((n, 3, 3))
    rows[:, :2, :] = LG
    rows[:, 2, :] = r[:, 0, None] * LG[:, 1, :] - r[:, 1, None] * LG[:, 0, :]
    return np.einsum("n,nij->ij", w, rows)


def head_resistance(t0, params, length=1.0):
    """3x3 matrix taking the head's rigid velocity to the wrench on the head.

    The head is the straight segment ``r(s) = length * s * t0`` for ``s`` in
    [0, delta]; ``length`` is the body length in model units.
    """
    t0 = as_unit_vec2(t0, "t0")
    nodes, w = simpson_rule(0.0, params.delta, panel_count(0.0, params.delta, params.n_quad))
    r = length * nodes[:, None] * t0[None, :]
    t = np.repeat(t0[None, :], nodes.size, axis=0)
    return _rigid_resistance(r, t, w * length, params)


def full_resistance(curve, params):
    """3x3 rigid-motion resistance of the whole curve over [0, 1]."""
    s, w, right = quadrature_nodes(curve, 0.0, 1.0, params.n_quad)
    r, t = _evaluate(curve, s, right)
    return _rigid_resistance(r, t, w, params)
