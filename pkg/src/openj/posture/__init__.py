"""Posture prediction: offline comfort-weighted IK and differential stepping."""

from openj.posture.balance import balance_margin, point_polygon_margin
from openj.posture.comfort import comfort_cost, comfort_gradient
from openj.posture.differential import project_to_target_batch, step_differential_ik
from openj.posture.solver import solve_posture
from openj.posture.types import PostureError, PostureSolution, ReachTarget, SolveOptions

__all__ = [
    "balance_margin",
    "point_polygon_margin",
    "comfort_cost",
    "comfort_gradient",
    "step_differential_ik",
    "project_to_target_batch",
    "solve_posture",
    "PostureError",
    "PostureSolution",
    "ReachTarget",
    "SolveOptions",
]
