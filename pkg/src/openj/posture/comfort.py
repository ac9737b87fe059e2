"""Comfort-weighted posture objective and its analytic gradient."""

from __future__ import annotations

import numpy as np

from openj.model import HumanModel, PostureVector


def comfort_cost(q: PostureVector | np.ndarray, model: HumanModel) -> float:
    """Sum of w_j * (q_j - q_j_neutral)^2 over all joints; >= 0."""
    arr = model.check_q(q)
    d = arr - model._q_neutral
    return float(np.dot(model._weights, d * d))


def comfort_gradient(q: PostureVector | np.ndarray, model: HumanModel) -> np.ndarray:
    """d/dq_j = 2 * w_j * (q_j - q_j_neutral)."""
    arr = model.check_q(q)
    return 2.0 * model._weights * (arr - model._q_neutral)
