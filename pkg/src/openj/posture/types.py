"""Posture-prediction domain types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class PostureError(ValueError):
    """Raised for invalid solve inputs."""


def _is_convex(poly: np.ndarray) -> bool:
    n = len(poly)
    sign = 0.0
    for i in range(n):
        a, b, c = poly[i], poly[(i + 1) % n], poly[(i + 2) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if abs(cross) < 1e-12:
            continue
        if sign == 0.0:
            sign = np.sign(cross)
        elif np.sign(cross) != sign:
            return False
    return sign != 0.0


@dataclass(frozen=True)
class ReachTarget:
    """Drive a point attached to a segment frame toward a world goal."""

    frame: str
    goal: np.ndarray
    point_in_frame: np.ndarray = field(default_factory=lambda: np.zeros(3))
    tolerance: float = 0.005  # m
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "goal", np.asarray(self.goal, dtype=float))
        object.__setattr__(
            self, "point_in_frame", np.asarray(self.point_in_frame, dtype=float)
        )
        if self.tolerance <= 0:
            raise PostureError("target tolerance must be > 0")
        if self.weight < 0:
            raise PostureError("target weight must be >= 0")


@dataclass(frozen=True)
class SolveOptions:
    max_iterations: int = 200
    restarts: int = 5
    position_tolerance: float = 0.005  # fallback for targets without one
    balance: Optional[np.ndarray] = None  # (n,2) convex support polygon, ground plane
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise PostureError("max_iterations must be >= 1")
        if self.restarts < 0:
            raise PostureError("restarts must be >= 0")
        if self.balance is not None:
            poly = np.asarray(self.balance, dtype=float)
            if poly.ndim != 2 or poly.shape[1] != 2 or poly.shape[0] < 3:
                raise PostureError("support polygon needs >= 3 ground-plane vertices")
            if not _is_convex(poly):
                raise PostureError("support polygon must be convex")
            object.__setattr__(self, "balance", poly)


@dataclass(frozen=True)
class PostureSolution:
    q: "np.ndarray"
    objective_value: float
    residuals: tuple[float, ...]
    feasible: bool
    iterations: int
    restarts_used: int
    balance_margin: Optional[float] = None
    balance_feasible: Optional[bool] = None

    def posture(self):
        from openj.model import PostureVector

        return PostureVector(self.q, clamped=True)
