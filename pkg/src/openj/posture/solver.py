"""Comfort-weighted posture optimization (SLSQP, joint limits, balance)."""

from __future__ import annotations

import warnings

import numpy as np
from scipy.optimize import minimize

from openj.model import HumanModel
from openj.model.kinematics import com_jacobian, forward_kinematics, jacobian
from openj.model.types import ModelError
from openj.posture.balance import point_polygon_margin
from openj.posture.comfort import comfort_cost, comfort_gradient
from openj.posture.types import PostureError, PostureSolution, ReachTarget, SolveOptions

# constraints aim just inside the tolerance sphere: converged SLSQP points
# satisfy them to ~1e-8, keeping the full-tolerance residual check safe while
# leaving the solution nearly all the comfort slack the tolerance allows
_TARGET_SHRINK = 0.999
_MARGIN_EPS = 1e-7


def _target_points(model: HumanModel, q: np.ndarray, targets) -> np.ndarray:
    fk = forward_kinematics(model, q)
    pts = []
    for t in targets:
        tf = fk[t.frame]
        pts.append(tf[:3, :3] @ t.point_in_frame + tf[:3, 3])
    return np.array(pts)


def _residuals(model: HumanModel, q: np.ndarray, targets) -> np.ndarray:
    pts = _target_points(model, q, targets)
    return np.linalg.norm(pts - np.array([t.goal for t in targets]), axis=1)


def solve_posture(
    model: HumanModel, targets: list[ReachTarget], options: SolveOptions | None = None
) -> PostureSolution:
    """Minimize the comfort objective subject to reach targets, joint limits
    and an optional support-polygon balance constraint.

    Local SQP solve from the neutral start; on residual failure, retries
    from seeded random in-limit starts. Deterministic given the seed.
    """
    options = options or SolveOptions()
    if not targets:
        raise PostureError("at least one reach target is required")
    for t in targets:
        if t.frame not in model._segment_node:
            raise ModelError(f"unknown frame {t.frame!r}")

    lo, hi = model.q_min, model.q_max
    bounds = list(zip(lo, hi))
    rng = np.random.default_rng(options.seed)

    def objective(q):
        return comfort_cost(q, model)

    def objective_grad(q):
        return comfort_gradient(q, model)

    constraints = []
    for t in targets:
        tol = (t.tolerance if t.tolerance else options.position_tolerance) * _TARGET_SHRINK

        def c_fun(q, t=t, tol=tol):
            fk = forward_kinematics(model, q)
            tf = fk[t.frame]
            p = tf[:3, :3] @ t.point_in_frame + tf[:3, 3]
            return tol * tol - float(np.dot(p - t.goal, p - t.goal))

        def c_jac(q, t=t):
            fk = forward_kinematics(model, q)
            tf = fk[t.frame]
            p = tf[:3, :3] @ t.point_in_frame + tf[:3, 3]
            J = jacobian(model, q, t.frame, t.point_in_frame)
            return -2.0 * (p - t.goal) @ J

        constraints.append({"type": "ineq", "fun": c_fun, "jac": c_jac})

    if options.balance is not None:
        poly = options.balance

        def b_fun(q):
            from openj.model import center_of_mass

            return point_polygon_margin(center_of_mass(model, q)[:2], poly)

        def b_jac(q):
            from openj.model import center_of_mass

            com = center_of_mass(model, q)
            margin = point_polygon_margin(com[:2], poly)
            # direction of increasing margin in the ground plane
            eps = 1e-6
            g = np.zeros(2)
            for k in range(2):
                p = com[:2].copy()
                p[k] += eps
                g[k] = (point_polygon_margin(p, poly) - margin) / eps
            return np.concatenate([g, [0.0]]) @ com_jacobian(model, q)

        constraints.append({"type": "ineq", "fun": b_fun, "jac": b_jac})

    def attempt(x0):
        with warnings.catch_warnings():
            # SLSQP line searches probe outside the box and clip; harmless
            warnings.filterwarnings("ignore", message=".*outside bounds.*")
            res = minimize(
                objective,
                x0,
                jac=objective_grad,
                bounds=bounds,
                constraints=constraints,
                method="SLSQP",
                options={"maxiter": options.max_iterations, "ftol": 1e-10},
            )
        q = np.clip(res.x, lo, hi)
        return q, int(res.nit)

    best = None
    restarts_used = 0
    for k in range(options.restarts + 1):
        if k == 0:
            x0 = np.clip(model.q_neutral, lo, hi)
        else:
            restarts_used += 1
            x0 = rng.uniform(lo, hi)
        q, nit = attempt(x0)
        resid = _residuals(model, q, targets)
        reach_ok = all(
            r <= (t.tolerance or options.position_tolerance)
            for r, t in zip(resid, targets)
        )
        margin = None
        balance_ok = None
        if options.balance is not None:
            from openj.model import center_of_mass

            margin = point_polygon_margin(center_of_mass(model, q)[:2], options.balance)
            balance_ok = margin >= -_MARGIN_EPS
        feasible = reach_ok and (balance_ok is not False)
        cand = PostureSolution(
            q=q,
            objective_value=comfort_cost(q, model),
            residuals=tuple(float(r) for r in resid),
            feasible=feasible,
            iterations=nit,
            restarts_used=restarts_used,
            balance_margin=margin,
            balance_feasible=balance_ok,
        )
        if feasible:
            return cand
        if best is None or sum(cand.residuals) < sum(best.residuals):
            best = cand
    return best
