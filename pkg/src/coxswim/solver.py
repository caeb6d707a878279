"""Force/moment balance on the head and the resulting body velocity."""

from dataclasses import dataclass
import math

import numpy as np

from .cox import Wrench2D, head_resistance, full_resistance, tail_wrench, TWO_PI

COND_CAP = 1e12
MODES = ("paper", "full")


class SingularSystemError(np.linalg.LinAlgError):
    """The resistance matrix is singular or too ill-conditioned to trust."""

    def __init__(self, message, condition, time=None):
        self.condition = condition
        self.time = time
        if time is not None:
            message = f"{message} (t = {time:.17g})"
        super().__init__(message)


@dataclass(frozen=True)
class BodyVelocity:
    """Rigid velocity of the head frame, expressed in the head frame."""

    v0x: float
    v0y: float
    omega0: float

    def __post_init__(self):
        for name in ("v0x", "v0y", "omega0"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise FloatingPointError(f"{name} is not finite")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, xi):
        return cls(float(xi[0]), float(xi[1]), float(xi[2]))

    @classmethod
    def zero(cls):
        return cls(0.0, 0.0, 0.0)

    def as_array(self):
        return np.array([self.v0x, self.v0y, self.omega0])


def solve_head_velocity(A, tail, convention="balance", cond_cap=COND_CAP):
    """Solve the head balance for the body velocity.

    With ``convention="balance"`` the head wrench cancels the tail wrench,
    ``A xi + W = 0``.  ``convention="printed"`` solves ``A xi = W`` instead and
    exists only for sensitivity comparisons.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3) or not np.all(np.isfinite(A)):
        raise ValueError("resistance matrix must be a finite 3x3 array")
    w = tail.as_array() if isinstance(tail, Wrench2D) else np.asarray(tail, dtype=float)
    if convention == "balance":
        rhs = -w
    elif convention == "printed":
        rhs = w
    else:
        raise ValueError(f"unknown balance convention {convention!r}")
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > cond_cap:
        raise SingularSystemError(
            f"resistance matrix condition number {cond:.3e} exceeds {cond_cap:.1e}", cond)
    return BodyVelocity.from_array(np.linalg.solve(A, rhs))


def balance_residual(A, xi, tail):
    """Norm of ``A xi + W``: zero when head and tail wrenches cancel."""
    return float(np.linalg.norm(np.asarray(A) @ xi.as_array() + tail.as_array()))


def assemble(curve, u_star, params, mode="paper"):
    """Resistance matrix and driving wrench for one shape state.

    ``mode="paper"``: only the straight head of length delta resists rigid
    motion, the tail (delta, 1] is driven by ``u_star`` alone.
    ``mode="full"``: the whole body resists rigid motion and ``u_star`` is a
    pure deformation velocity over [0, 1].
    """
    if mode == "paper":
        A = head_resistance(curve.head_tangent, params, curve.length)
        W = tail_wrench(curve, u_star, params)
    elif mode == "full":
        A = full_resistance(curve, params)
        W = tail_wrench(curve, u_star, params, start=0.0)
    else:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return A, W


def body_velocity(curve, u_star, params, mode="paper", cond_cap=COND_CAP):
    """Body velocity and balance residual for one shape state."""
    A, W = assemble(curve, u_star, params, mode)
    xi = solve_head_velocity(A, W, cond_cap=cond_cap)
    return xi, balance_residual(A, xi, W)


def purcell_body_velocity(curve, shape_velocity, params, cond_cap=COND_CAP):
    """Full-coupling body velocity: whole-body resistance against deformation."""
    return body_velocity(curve, shape_velocity, params, "full", cond_cap)[0]


def printed_head_matrix(t0, params):
    """Closed-form head matrix entries in their published tabulated form.

    Kept only to audit the quadrature assembly; the tabulated entries omit
    the factor 2*pi and contain several apparent typos.
    """
    tx, ty = float(t0[0]), float(t0[1])
    c, d, lg = params.c, params.delta, math.log(2.0)
    c2 = c * c
    a11 = -c * d - c2 * d * lg * (tx * tx + 1) - c2 * d * (3 * tx * tx - 2)
    a13 = d * d / 2 * (-ty - c2 * lg * ty * tx * tx - c2 * lg + 3 * c2 * ty * tx * tx - c2 * ty)
    a22 = -c * d - c2 * d * lg * (ty * ty + 1) - c2 * d * (3 * ty * ty - 2)
    a23 = d * d / 2 * (-tx - c2 * lg * tx * ty * ty + lg * c2 * tx
                       - 3 * c2 * tx * ty * ty - 2 * c2 * tx)
    k = 2 * lg - 2
    a31 = c * d * d / 2 - k * d * d / 2 * ty
    a32 = -d * d / 2 * c * tx + k * d * d / 2 * tx
    a33 = -d ** 3 / 3 * tx * tx - 2 * d ** 3 / 3 * ty * ty - k * d * d / 2 * tx
    return np.array([[a11, 0.0, a13], [0.0, a22, a23], [a31, a32, a33]])


def head_matrix_discrepancies(t0, params, rtol=1e-6):
    """Entries where the tabulated head matrix disagrees with quadrature.

    Quadrature values are divided by 2*pi to match the tabulated
    normalization.  Returns a list of ``(i, j, printed, quadrature)`` with
    1-based indices.
    """
    printed = printed_head_matrix(t0, params)
    quad = head_resistance(t0, params) / TWO_PI
    scale = np.max(np.abs(quad))
    out = []
    for i in range(3):
        for j in range(3):
            p, q = printed[i, j], quad[i, j]
            if abs(p - q) > rtol * max(abs(q), scale * 1e-12):
                out.append((i + 1, j + 1, float(p), float(q)))
    return out


def discrepancy_report(params, tangents):
    """Plain-text listing of every mismatched tabulated head-matrix entry."""
    lines = [
        "# head matrix: tabulated closed form vs quadrature (divided by 2*pi)",
        f"# h={params.h!r} delta={params.delta!r} beta={params.beta!r} "
        f"order={params.order} n_quad={params.n_quad}",
        "t0x,t0y,entry,tabulated,quadrature",
    ]
    for t0 in tangents:
        for i, j, p, q in head_matrix_discrepancies(t0, params):
            lines.append(f"{t0[0]:.17g},{t0[1]:.17g},a{i}{j},{p:.10e},{q:.10e}")
    return "\n".join(lines) + "\n"
