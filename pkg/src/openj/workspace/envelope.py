"""Monte Carlo reach envelopes: uniform in-limit joint sampling, chain FK,
convex hull of the end-point cloud."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import ConvexHull

from openj.model import HumanModel, fk_point_batch
from openj.model.types import ModelError

MIN_SAMPLES = 1000

# convenience chain presets: joints sampled, frame the point rides on
CHAIN_PRESETS = {
    "arm_l": (
        ["shoulder_l_flexion", "shoulder_l_abduction", "shoulder_l_rotation",
         "elbow_l_flexion", "elbow_l_pronation", "wrist_l_flexion", "wrist_l_deviation"],
        "hand_l",
    ),
    "arm_r": (
        ["shoulder_r_flexion", "shoulder_r_abduction", "shoulder_r_rotation",
         "elbow_r_flexion", "elbow_r_pronation", "wrist_r_flexion", "wrist_r_deviation"],
        "hand_r",
    ),
}


class EnvelopeError(ValueError):
    pass


@dataclass
class ReachEnvelope:
    hull_vertices: np.ndarray  # (V, 3)
    hull_triangles: np.ndarray  # (F, 3) indices into hull_vertices
    equations: np.ndarray  # (F, 4) outward plane normals + offsets
    sample_count: int
    seed: int
    chain: tuple[str, ...]
    frame: str
    is_planar: bool = False
    plane: Optional[np.ndarray] = None  # (4,) for planar envelopes
    planar_polygon: Optional[np.ndarray] = None  # (P, 3) CCW boundary when planar


def _affine_rank(points: np.ndarray, tol: float = 1e-9) -> int:
    centered = points - points.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    scale = s[0] if s[0] > 0 else 1.0
    return int((s > tol * scale).sum())


def reach_envelope(
    model: HumanModel,
    chain: list[str] | str,
    n_samples: int = 50_000,
    seed: int = 0,
    frame: str | None = None,
    point: np.ndarray | None = None,
) -> ReachEnvelope:
    """Sample chain joints uniformly within limits (seeded), push the attached
    point through FK and hull the cloud. Deterministic given the seed."""
    if isinstance(chain, str):
        try:
            joint_names, default_frame = CHAIN_PRESETS[chain]
        except KeyError:
            raise EnvelopeError(
                f"unknown chain preset {chain!r}; presets: {sorted(CHAIN_PRESETS)}"
            ) from None
        frame = frame or default_frame
    else:
        joint_names = list(chain)
        if frame is None:
            raise EnvelopeError("explicit joint chains require a frame")
    if not joint_names:
        raise EnvelopeError("chain must contain at least one joint")
    if n_samples < MIN_SAMPLES:
        raise EnvelopeError(f"n_samples must be >= {MIN_SAMPLES}, got {n_samples}")
    idx = [model.joint_index(j) for j in joint_names]
    if frame not in model._segment_node:
        raise ModelError(f"unknown frame {frame!r}")

    rng = np.random.default_rng(seed)
    Q = np.tile(model.q_neutral, (n_samples, 1))
    lo = model._q_min[idx]
    hi = model._q_max[idx]
    Q[:, idx] = rng.uniform(lo, hi, size=(n_samples, len(idx)))
    pts = fk_point_batch(model, Q, frame, point)

    rank = _affine_rank(pts)
    if rank >= 3:
        hull = ConvexHull(pts)
        return ReachEnvelope(
            hull_vertices=pts[hull.vertices].copy(),
            hull_triangles=_reindex(hull.simplices, hull.vertices),
            equations=hull.equations.copy(),
            sample_count=n_samples,
            seed=seed,
            chain=tuple(joint_names),
            frame=frame,
        )
    return _planar_envelope(pts, n_samples, seed, tuple(joint_names), frame)


def _reindex(simplices: np.ndarray, vertex_ids: np.ndarray) -> np.ndarray:
    remap = {v: i for i, v in enumerate(vertex_ids)}
    return np.vectorize(remap.get)(simplices)


def _planar_envelope(pts, n_samples, seed, chain, frame) -> ReachEnvelope:
    """Degenerate (rank <= 2) clouds: hull in their best-fit plane."""
    centroid = pts.mean(axis=0)
    centered = pts - centroid
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    u, v, normal = vt[0], vt[1], vt[2]
    plane = np.concatenate([normal, [-float(normal @ centroid)]])

    uv = np.column_stack([centered @ u, centered @ v])
    if _affine_rank(uv) >= 2:
        hull2 = ConvexHull(uv)
        boundary = hull2.vertices
    else:  # collinear: take the two extreme points
        t = uv[:, 0]
        boundary = np.array([int(t.argmin()), int(t.argmax())])
    poly3 = pts[boundary]
    verts = poly3
    tris = np.array([[0, k, k + 1] for k in range(1, len(verts) - 1)], dtype=int)
    if len(tris) == 0:
        tris = np.zeros((0, 3), dtype=int)
    return ReachEnvelope(
        hull_vertices=verts.copy(),
        hull_triangles=tris,
        equations=np.zeros((0, 4)),
        sample_count=n_samples,
        seed=seed,
        chain=chain,
        frame=frame,
        is_planar=True,
        plane=plane,
        planar_polygon=poly3.copy(),
    )


def point_reachable(env: ReachEnvelope, p: np.ndarray, tol: float = 1e-9):
    """Half-space classification against the hull.

    Returns (status, signed distance): the max signed face-plane distance,
    negative inside. Planar envelopes test plane membership plus the 2D hull.
    """
    p = np.asarray(p, dtype=float)
    if env.is_planar:
        plane_dist = abs(float(env.plane[:3] @ p + env.plane[3]))
        inside2d = _inside_planar(env, p, tol)
        dist = plane_dist if inside2d else max(plane_dist, _planar_edge_distance(env, p))
        inside = plane_dist <= tol and inside2d
        return ("inside" if inside else "outside"), (-0.0 if inside else dist)
    d = env.equations[:, :3] @ p + env.equations[:, 3]
    signed = float(d.max())
    return ("inside" if signed <= tol else "outside"), signed


def _inside_planar(env: ReachEnvelope, p: np.ndarray, tol: float) -> bool:
    poly = env.planar_polygon
    if len(poly) < 3:
        a, b = poly[0], poly[-1]
        t = np.clip((p - a) @ (b - a) / max((b - a) @ (b - a), 1e-300), 0, 1)
        return bool(np.linalg.norm(p - (a + t * (b - a))) <= tol)
    normal = env.plane[:3]
    sign = 0.0
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        c = np.cross(b - a, p - a) @ normal
        if abs(c) < 1e-15:
            continue
        if sign == 0.0:
            sign = np.sign(c)
        elif np.sign(c) != sign:
            return False
    return True


def _planar_edge_distance(env: ReachEnvelope, p: np.ndarray) -> float:
    poly = env.planar_polygon
    best = np.inf
    for i in range(len(poly)):
        a, b = poly[i], poly[(i + 1) % len(poly)]
        ab = b - a
        t = np.clip((p - a) @ ab / max(ab @ ab, 1e-300), 0, 1)
        best = min(best, float(np.linalg.norm(p - (a + t * ab))))
    return best


def envelope_to_obj(env: ReachEnvelope) -> str:
    from openj.workspace.meshio import write_obj

    return write_obj(env.hull_vertices, env.hull_triangles, name=f"reach_{env.frame}")
