"""Small rigid-transform helpers shared across modules.

All transforms are 4x4 homogeneous matrices, world frame Z-up, X forward,
Y left. Rotations are axis-angle about unit axes (Rodrigues).
"""

from __future__ import annotations

import numpy as np

IDENTITY = np.eye(4)


def rotation_about_axis(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix for a unit axis."""
    x, y, z = axis
    c = np.cos(angle)
    s = np.sin(angle)
    t = 1.0 - c
    return np.array(
        [
            [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
        ]
    )


def transform(rotation: np.ndarray | None = None, translation=None) -> np.ndarray:
    out = np.eye(4)
    if rotation is not None:
        out[:3, :3] = rotation
    if translation is not None:
        out[:3, 3] = translation
    return out


def joint_transform(kind: str, axis: np.ndarray, q: float) -> np.ndarray:
    """Local transform contributed by one scalar joint at value q."""
    if kind == "revolute":
        return transform(rotation=rotation_about_axis(axis, q))
    return transform(translation=axis * q)


def apply_transform(tf: np.ndarray, point: np.ndarray) -> np.ndarray:
    return tf[:3, :3] @ point + tf[:3, 3]


def rotation_is_proper(rotation: np.ndarray, tol: float = 1e-9) -> bool:
    err = np.abs(rotation.T @ rotation - np.eye(3)).max()
    return err < tol and np.linalg.det(rotation) > 0.0


def unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("zero-length vector cannot be normalized")
    return v / n


def angle_between(a: np.ndarray, b: np.ndarray) -> float:
    """Angle in radians between two nonzero vectors, numerically safe."""
    cosang = np.dot(unit(a), unit(b))
    return float(np.arccos(np.clip(cosang, -1.0, 1.0)))
