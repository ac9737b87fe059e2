"""Static balance: signed distance of the CoM ground projection to a
convex support polygon (positive inside, negative outside)."""

from __future__ import annotations

import numpy as np

from openj.model import HumanModel, PostureVector, center_of_mass
from openj.posture.types import PostureError


def _ccw(polygon: np.ndarray) -> np.ndarray:
    area2 = 0.0
    n = len(polygon)
    for i in range(n):
        x1, y1 = polygon[i]
        x2, y2 = polygon[(i + 1) % n]
        area2 += x1 * y2 - x2 * y1
    if abs(area2) < 1e-12:
        raise PostureError("degenerate support polygon (zero area)")
    return polygon if area2 > 0 else polygon[::-1]


def point_polygon_margin(point_xy: np.ndarray, polygon: np.ndarray) -> float:
    """Signed Euclidean distance to the polygon boundary.

    Positive when the point lies inside (distance to the nearest edge),
    negative outside. Polygon must be convex; orientation is normalized.
    """
    poly = _ccw(np.asarray(polygon, dtype=float))
    p = np.asarray(point_xy, dtype=float)
    n = len(poly)
    inside = True
    best = np.inf
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        edge = b - a
        elen = np.linalg.norm(edge)
        if elen < 1e-12:
            raise PostureError("degenerate support polygon (repeated vertex)")
        # left-of test for CCW polygon
        cross = edge[0] * (p[1] - a[1]) - edge[1] * (p[0] - a[0])
        if cross < 0:
            inside = False
        # Euclidean distance to the edge segment
        t = np.clip(np.dot(p - a, edge) / (elen * elen), 0.0, 1.0)
        best = min(best, float(np.linalg.norm(p - (a + t * edge))))
    return best if inside else -best


def balance_margin(
    model: HumanModel, q: PostureVector | np.ndarray, polygon: np.ndarray
) -> float:
    """Margin of the CoM ground-plane projection within the support polygon."""
    com = center_of_mass(model, q)
    return point_polygon_margin(com[:2], polygon)
