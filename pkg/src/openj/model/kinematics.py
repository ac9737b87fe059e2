"""Forward kinematics, geometric Jacobians and whole-body center of mass.

All functions are pure; batched variants vectorize over postures for the
Monte Carlo and oracle-projection workloads.
"""

from __future__ import annotations

import numpy as np

from openj.geometry import joint_transform
from openj.model.types import HumanModel, ModelError, PostureVector


def _link_frames(model: HumanModel, q: np.ndarray) -> np.ndarray:
    """World transform of every kinematic node, ordered by node index."""
    nodes = model._nodes
    frames = np.empty((len(nodes), 4, 4))
    for i, node in enumerate(nodes):
        base = frames[node.parent] if node.parent >= 0 else np.eye(4)
        tf = base @ node.origin
        if node.joint_index is not None:
            joint = model.joints[node.joint_index]
            tf = tf @ joint_transform(joint.kind, joint.axis, q[node.joint_index])
        frames[i] = tf
    return frames


def forward_kinematics(model: HumanModel, q: PostureVector | np.ndarray) -> dict:
    """Map segment name -> rigid 4x4 world transform."""
    arr = model.check_q(q)
    frames = _link_frames(model, arr)
    return {name: frames[idx].copy() for name, idx in model._segment_node.items()}


def _chain_to_node(model: HumanModel, node_index: int) -> list[int]:
    chain = []
    idx = node_index
    while idx >= 0:
        chain.append(idx)
        idx = model._nodes[idx].parent
    return chain[::-1]


def _point_jacobian(
    model: HumanModel, frames: np.ndarray, node_idx: int, p_world: np.ndarray
) -> np.ndarray:
    J = np.zeros((3, model.dof))
    for idx in _chain_to_node(model, node_idx):
        node = model._nodes[idx]
        if node.joint_index is None:
            continue
        joint = model.joints[node.joint_index]
        base = frames[node.parent] if node.parent >= 0 else np.eye(4)
        pre = base @ node.origin
        axis_world = pre[:3, :3] @ joint.axis
        if joint.kind == "revolute":
            anchor = pre[:3, 3]
            J[:, node.joint_index] = np.cross(axis_world, p_world - anchor)
        else:
            J[:, node.joint_index] = axis_world
    return J


def jacobian(
    model: HumanModel,
    q: PostureVector | np.ndarray,
    frame: str,
    point: np.ndarray | None = None,
) -> np.ndarray:
    """3 x n positional Jacobian of a point attached to a segment frame.

    Column j is the world velocity of the point per unit velocity of
    joint j; columns of joints off the root path are zero.
    """
    arr = model.check_q(q)
    if frame not in model._segment_node:
        raise ModelError(f"unknown frame {frame!r}")
    point = np.zeros(3) if point is None else np.asarray(point, dtype=float)

    frames = _link_frames(model, arr)
    node_idx = model._segment_node[frame]
    target = frames[node_idx]
    p_world = target[:3, :3] @ point + target[:3, 3]
    return _point_jacobian(model, frames, node_idx, p_world)


def com_jacobian(model: HumanModel, q: PostureVector | np.ndarray) -> np.ndarray:
    """3 x n Jacobian of the whole-body center of mass."""
    total = model.total_mass()
    if total <= 0.0:
        raise ModelError("total segment mass is zero; populate BSP first")
    arr = model.check_q(q)
    frames = _link_frames(model, arr)
    J = np.zeros((3, model.dof))
    for seg in model.segments:
        if seg.bsp.mass == 0.0:
            continue
        idx = model._segment_node[seg.name]
        tf = frames[idx]
        p = tf[:3, :3] @ seg.bsp.com_offset + tf[:3, 3]
        J += seg.bsp.mass * _point_jacobian(model, frames, idx, p)
    return J / total


def center_of_mass(model: HumanModel, q: PostureVector | np.ndarray) -> np.ndarray:
    """Mass-weighted world center of mass over all segments."""
    total = model.total_mass()
    if total <= 0.0:
        raise ModelError("total segment mass is zero; populate BSP first")
    arr = model.check_q(q)
    frames = _link_frames(model, arr)
    acc = np.zeros(3)
    for seg in model.segments:
        tf = frames[model._segment_node[seg.name]]
        acc += seg.bsp.mass * (tf[:3, :3] @ seg.bsp.com_offset + tf[:3, 3])
    return acc / total


# -- batched chain kinematics ------------------------------------------------


def _rotation_batch(axis: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """(N,3,3) Rodrigues rotations about one fixed unit axis."""
    x, y, z = axis
    c = np.cos(angles)
    s = np.sin(angles)
    t = 1.0 - c
    R = np.empty((angles.shape[0], 3, 3))
    R[:, 0, 0] = t * x * x + c
    R[:, 0, 1] = t * x * y - s * z
    R[:, 0, 2] = t * x * z + s * y
    R[:, 1, 0] = t * x * y + s * z
    R[:, 1, 1] = t * y * y + c
    R[:, 1, 2] = t * y * z - s * x
    R[:, 2, 0] = t * x * z - s * y
    R[:, 2, 1] = t * y * z + s * x
    R[:, 2, 2] = t * z * z + c
    return R


def chain_info(model: HumanModel, frame: str):
    """Static chain description from root to a segment frame."""
    if frame not in model._segment_node:
        raise ModelError(f"unknown frame {frame!r}")
    return [
        (model._nodes[i].origin, model._nodes[i].joint_index)
        for i in _chain_to_node(model, model._segment_node[frame])
    ]


def fk_point_batch(
    model: HumanModel,
    Q: np.ndarray,
    frame: str,
    point: np.ndarray | None = None,
    return_jacobian: bool = False,
):
    """World position of one attached point for a batch of postures.

    Q has shape (N, dof). Returns (N, 3); with return_jacobian, also the
    (N, 3, dof) positional Jacobian (batched geometric method).
    """
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[1] != model.dof:
        raise ModelError(f"batch must have shape (N, {model.dof})")
    n = Q.shape[0]
    point = np.zeros(3) if point is None else np.asarray(point, dtype=float)

    R = np.broadcast_to(np.eye(3), (n, 3, 3)).copy()
    p = np.zeros((n, 3))
    anchors, axes_world, kinds, jidx = [], [], [], []

    for origin, joint_index in chain_info(model, frame):
        # constant origin offset
        p = p + np.einsum("nij,j->ni", R, origin[:3, 3])
        if joint_index is None:
            continue
        joint = model.joints[joint_index]
        axis_w = np.einsum("nij,j->ni", R, joint.axis)
        if return_jacobian:
            anchors.append(p.copy())
            axes_world.append(axis_w)
            kinds.append(joint.kind)
            jidx.append(joint_index)
        if joint.kind == "revolute":
            R = np.einsum("nij,njk->nik", R, _rotation_batch(joint.axis, Q[:, joint_index]))
        else:
            p = p + axis_w * Q[:, joint_index][:, None]

    p_world = p + np.einsum("nij,j->ni", R, point)
    if not return_jacobian:
        return p_world

    J = np.zeros((n, 3, model.dof))
    for anchor, axis_w, kind, j in zip(anchors, axes_world, kinds, jidx):
        if kind == "revolute":
            J[:, :, j] = np.cross(axis_w, p_world - anchor)
        else:
            J[:, :, j] = axis_w
    return p_world, J
