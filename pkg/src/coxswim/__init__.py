"""Kinematics of a slender flexible swimmer at low Reynolds number."""

__version__ = "0.1.0"

from .geometry import ModelParams, ShapeCurve, curve_from_graph, polyline_curve, interpolate
from .cox import Wrench2D, drag_operator, tail_wrench, head_resistance, full_resistance
from .solver import (BodyVelocity, SingularSystemError, solve_head_velocity,
                     purcell_body_velocity, body_velocity)
from .dynamics import Pose, Trajectory, step_pose, simulate, reconstruct_world
from .shapes import (BumpParams, PurcellShape, bump, bump_velocity, bump_program,
                     purcell_program)
from .controllability import (se2_bracket, local_connection, connection_curvature,
                              filtration, controllability_report)

__all__ = [
    "ModelParams", "ShapeCurve", "curve_from_graph", "polyline_curve", "interpolate",
    "Wrench2D", "drag_operator", "tail_wrench", "head_resistance", "full_resistance",
    "BodyVelocity", "SingularSystemError", "solve_head_velocity", "purcell_body_velocity",
    "body_velocity", "Pose", "Trajectory", "step_pose", "simulate", "reconstruct_world",
    "BumpParams", "PurcellShape", "bump", "bump_velocity", "bump_program", "purcell_program",
    "se2_bracket", "local_connection", "connection_curvature", "filtration",
    "controllability_report",
]
