"""Segment-vs-scene occlusion by vectorized ray-triangle intersection."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from openj.workspace.meshio import SceneMesh

EPSILON = 1e-6


def ray_triangle_hits(
    origin: np.ndarray, direction: np.ndarray, corners: np.ndarray
) -> np.ndarray:
    """Parametric t of ray/triangle intersections (NaN where none).

    Moller-Trumbore over a (T, 3, 3) corner array; `direction` need not be
    unit length (t is in units of its length).
    """
    a = corners[:, 0]
    e1 = corners[:, 1] - a
    e2 = corners[:, 2] - a
    pvec = np.cross(direction[None, :], e2)
    det = np.einsum("ij,ij->i", e1, pvec)
    t = np.full(len(corners), np.nan)
    ok = np.abs(det) > 1e-14
    if not ok.any():
        return t
    inv = np.zeros_like(det)
    inv[ok] = 1.0 / det[ok]
    tvec = origin[None, :] - a
    u = np.einsum("ij,ij->i", tvec, pvec) * inv
    qvec = np.cross(tvec, e1)
    v = np.einsum("j,ij->i", direction, qvec) * inv
    inside = ok & (u >= -1e-12) & (v >= -1e-12) & (u + v <= 1.0 + 1e-12)
    tt = np.einsum("ij,ij->i", e2, qvec) * inv
    t[inside] = tt[inside]
    return t


def occlusion_check(
    scene: Iterable[SceneMesh], eye: np.ndarray, target: np.ndarray
) -> tuple[bool, Optional[np.ndarray]]:
    """(visible, first hit point). Occluded iff some triangle intersects the
    open segment (t strictly inside (eps, 1-eps))."""
    eye = np.asarray(eye, dtype=float)
    target = np.asarray(target, dtype=float)
    direction = target - eye
    if np.linalg.norm(direction) < 1e-12:
        raise ValueError("eye and target coincide")

    best_t = np.inf
    for mesh in scene:
        t = ray_triangle_hits(eye, direction, mesh.triangle_corners)
        mask = np.isfinite(t) & (t > EPSILON) & (t < 1.0 - EPSILON)
        if mask.any():
            best_t = min(best_t, float(t[mask].min()))
    if np.isinf(best_t):
        return True, None
    return False, eye + best_t * direction
