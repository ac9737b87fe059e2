"""Damped weighted least-squares differential IK (interactive rate)."""

from __future__ import annotations

import numpy as np

from openj.model import HumanModel, PostureVector
from openj.model.kinematics import fk_point_batch, forward_kinematics, jacobian
from openj.posture.types import PostureError, ReachTarget

DAMPING = 1e-4  # lambda, unit-normalized
RIDGE = 1e-10
MAX_LINEAR_SPEED = 2.0  # m/s cap on the commanded end-effector velocity


def step_differential_ik(
    model: HumanModel,
    q: PostureVector | np.ndarray,
    target: ReachTarget,
    dt: float,
) -> PostureVector:
    """One velocity step toward the target.

    Joint velocities minimize ||J qdot - v_des||^2 + lambda ||W qdot||^2
    with W = diag(comfort weights), then are clamped per joint and the
    result is clamped to joint limits.
    """
    if not (0.0 < dt <= 0.1):
        raise PostureError(f"dt must be in (0, 0.1], got {dt}")
    arr = model.check_q(q)

    fk = forward_kinematics(model, arr)
    tf = fk[target.frame]
    p = tf[:3, :3] @ target.point_in_frame + tf[:3, 3]
    err = target.goal - p
    dist = np.linalg.norm(err)
    if dist < 1e-12:
        return PostureVector(np.clip(arr, model._q_min, model._q_max), clamped=True)

    v_des = err / dt
    speed = np.linalg.norm(v_des)
    if speed > MAX_LINEAR_SPEED:
        v_des *= MAX_LINEAR_SPEED / speed

    J = jacobian(model, arr, target.frame, target.point_in_frame)
    W2 = np.diag(model._weights**2)
    vmax = model._velocity_limits
    lo, hi = model._q_min, model._q_max

    # saturation-aware damped least squares: joints whose step would cross a
    # limit are locked and the velocity re-solved over the rest, so a clamped
    # joint (often the free base) cannot silently absorb the command
    locked = np.zeros(model.dof, dtype=bool)
    qdot = np.zeros(model.dof)
    for _ in range(4):
        Jm = J.copy()
        Jm[:, locked] = 0.0
        A = Jm.T @ Jm + DAMPING * W2 + RIDGE * np.eye(model.dof)
        qdot = np.linalg.solve(A, Jm.T @ v_des)
        qdot[locked] = 0.0
        qdot = np.clip(qdot, -vmax, vmax)
        stepped = arr + qdot * dt
        saturating = ((stepped > hi) & (qdot > 0)) | ((stepped < lo) & (qdot < 0))
        saturating &= ~locked
        if not saturating.any():
            break
        locked |= saturating

    q_new = np.clip(arr + qdot * dt, lo, hi)
    return PostureVector(q_new, clamped=True)


def project_to_target_batch(
    model: HumanModel,
    Q: np.ndarray,
    frame: str,
    point: np.ndarray,
    goal: np.ndarray,
    tolerance: float,
    max_steps: int = 120,
    step_gain: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Drive a batch of postures onto a target manifold by damped least squares.

    Vectorized over samples; returns (Q_projected, converged mask). Used to
    generate large sets of *feasible* postures independent of the offline
    solver (oracle workloads).
    """
    Q = np.array(Q, dtype=float)
    lo, hi = model._q_min, model._q_max
    goal = np.asarray(goal, dtype=float)
    eye = RIDGE * np.eye(model.dof)

    for _ in range(max_steps):
        p, J = fk_point_batch(model, Q, frame, point, return_jacobian=True)
        err = goal[None, :] - p
        dist = np.linalg.norm(err, axis=1)
        active = dist > tolerance * 0.5
        if not active.any():
            break
        Ja = J[active]
        # normal equations per sample: (J^T J + lam I) dq = J^T err
        JtJ = np.einsum("nij,nik->njk", Ja, Ja)
        A = JtJ + DAMPING * np.eye(model.dof)[None, :, :] + eye[None, :, :]
        rhs = np.einsum("nij,ni->nj", Ja, err[active])
        dq = np.linalg.solve(A, rhs[:, :, None])[:, :, 0]
        Q[active] = np.clip(Q[active] + step_gain * dq, lo, hi)

    p = fk_point_batch(model, Q, frame, point)
    converged = np.linalg.norm(goal[None, :] - p, axis=1) <= tolerance
    return Q, converged
