"""Post-solve clearance: exact capsule/cylinder-to-triangle distances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from openj.model import HumanModel, PostureVector, forward_kinematics
from openj.workspace.meshio import SceneMesh
from openj.workspace.raycast import ray_triangle_hits


def closest_point_on_triangle(p: np.ndarray, a: np.ndarray, b: np.ndarray,
                              c: np.ndarray) -> np.ndarray:
    ab = b - a
    ac = c - a
    ap = p - a
    d1 = ab @ ap
    d2 = ac @ ap
    if d1 <= 0.0 and d2 <= 0.0:
        return a
    bp = p - b
    d3 = ab @ bp
    d4 = ac @ bp
    if d3 >= 0.0 and d4 <= d3:
        return b
    vc = d1 * d4 - d3 * d2
    if vc <= 0.0 and d1 >= 0.0 and d3 <= 0.0:
        return a + (d1 / (d1 - d3)) * ab
    cp = p - c
    d5 = ab @ cp
    d6 = ac @ cp
    if d6 >= 0.0 and d5 <= d6:
        return c
    vb = d5 * d2 - d1 * d6
    if vb <= 0.0 and d2 >= 0.0 and d6 <= 0.0:
        return a + (d2 / (d2 - d6)) * ac
    va = d3 * d6 - d5 * d4
    if va <= 0.0 and (d4 - d3) >= 0.0 and (d5 - d6) >= 0.0:
        w = (d4 - d3) / ((d4 - d3) + (d5 - d6))
        return b + w * (c - b)
    denom = 1.0 / (va + vb + vc)
    v = vb * denom
    w = vc * denom
    return a + ab * v + ac * w


def closest_segment_segment(p1, q1, p2, q2) -> tuple[np.ndarray, np.ndarray]:
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = d1 @ d1
    e = d2 @ d2
    f = d2 @ r
    eps = 1e-15
    if a <= eps and e <= eps:
        return p1, p2
    if a <= eps:
        s, t = 0.0, np.clip(f / e, 0.0, 1.0)
    else:
        c = d1 @ r
        if e <= eps:
            t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
        else:
            b = d1 @ d2
            denom = a * e - b * b
            s = np.clip((b * f - c * e) / denom, 0.0, 1.0) if denom > eps else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t, s = 0.0, np.clip(-c / a, 0.0, 1.0)
            elif t > 1.0:
                t, s = 1.0, np.clip((b - c) / a, 0.0, 1.0)
    return p1 + d1 * s, p2 + d2 * t


def segment_triangle_closest(p, q, tri) -> tuple[np.ndarray, np.ndarray]:
    """Closest points (on segment, on triangle); identical when intersecting."""
    a, b, c = tri
    direction = q - p
    t = ray_triangle_hits(p, direction, tri[None, :, :])[0]
    if np.isfinite(t) and -1e-12 <= t <= 1.0 + 1e-12:
        hit = p + np.clip(t, 0.0, 1.0) * direction
        return hit, hit

    best = None
    best_d = np.inf
    for endpoint in (p, q):
        cp = closest_point_on_triangle(endpoint, a, b, c)
        d = float(np.linalg.norm(endpoint - cp))
        if d < best_d:
            best_d = d
            best = (endpoint, cp)
    for e1, e2 in ((a, b), (b, c), (c, a)):
        s_pt, t_pt = closest_segment_segment(p, q, e1, e2)
        d = float(np.linalg.norm(s_pt - t_pt))
        if d < best_d:
            best_d = d
            best = (s_pt, t_pt)
    return best


@dataclass(frozen=True)
class ClearanceResult:
    distance: float  # negative = penetration depth of the capsule surface
    segment: str
    mesh: str
    point_on_body: Optional[np.ndarray]
    point_on_mesh: Optional[np.ndarray]


def clearance(
    scene: Iterable[SceneMesh], model: HumanModel, q: PostureVector | np.ndarray
) -> ClearanceResult:
    """Minimum distance between any body primitive and any scene triangle."""
    meshes = list(scene)
    if not meshes:
        raise ValueError("clearance requires a non-empty scene")
    fk = forward_kinematics(model, q)

    best = ClearanceResult(np.inf, "", "", None, None)
    for seg in model.segments:
        tf = fk[seg.name]
        prim = seg.primitive
        s0, s1 = prim.endpoints
        p0 = tf[:3, :3] @ s0 + tf[:3, 3]
        p1 = tf[:3, :3] @ s1 + tf[:3, 3]
        for mesh in meshes:
            for tri in mesh.triangle_corners:
                axis_pt, tri_pt = segment_triangle_closest(p0, p1, tri)
                axis_dist = float(np.linalg.norm(axis_pt - tri_pt))
                dist = axis_dist - prim.radius
                if dist < best.distance:
                    if axis_dist > 1e-12:
                        direction = (tri_pt - axis_pt) / axis_dist
                        surface = axis_pt + direction * prim.radius
                    else:
                        surface = axis_pt
                    best = ClearanceResult(dist, seg.name, mesh.name, surface, tri_pt)
    return best
