"""Triangle-soup scene meshes: STL (text + binary) and OBJ input, OBJ output."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np


class MeshError(ValueError):
    """Raised for unparseable or empty mesh input."""


@dataclass
class SceneMesh:
    """Workplace geometry as welded triangle soup (meters)."""

    vertices: np.ndarray  # (V, 3) float
    triangles: np.ndarray  # (T, 3) int
    name: str = "mesh"
    degenerate_dropped: int = 0

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.triangles = np.asarray(self.triangles, dtype=int).reshape(-1, 3)
        if len(self.triangles) == 0:
            raise MeshError(f"mesh {self.name!r} has no triangles")
        if self.triangles.min() < 0 or self.triangles.max() >= len(self.vertices):
            raise MeshError(f"mesh {self.name!r} has out-of-range triangle indices")

    @property
    def triangle_corners(self) -> np.ndarray:
        """(T, 3, 3) corner coordinates."""
        return self.vertices[self.triangles]


def _weld(raw_triangles: np.ndarray, name: str) -> SceneMesh:
    """Weld duplicate vertices exactly and drop zero-area triangles."""
    tris = np.asarray(raw_triangles, dtype=float).reshape(-1, 3, 3)
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    areas = 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)
    keep = areas > 1e-12
    dropped = int((~keep).sum())
    tris = tris[keep]
    if len(tris) == 0:
        raise MeshError(f"mesh {name!r} has no non-degenerate triangles")
    flat = tris.reshape(-1, 3)
    verts, inverse = np.unique(flat.round(decimals=9), axis=0, return_inverse=True)
    triangles = inverse.reshape(-1, 3)
    return SceneMesh(verts, triangles, name, degenerate_dropped=dropped)


def load_mesh(doc: str | bytes, name: str = "mesh", scale: float = 1.0) -> SceneMesh:
    """Parse STL (text or binary) or OBJ content; units assumed meters
    (apply `scale` otherwise). Degenerate triangles are dropped and counted."""
    if isinstance(doc, bytes):
        if _looks_binary_stl(doc):
            tris = _parse_binary_stl(doc)
        else:
            return load_mesh(doc.decode("utf-8", errors="replace"), name, scale)
    else:
        stripped = doc.lstrip()
        if stripped.startswith("solid"):
            tris = _parse_text_stl(doc)
        elif any(line.strip().startswith(("v ", "f ")) for line in doc.splitlines()):
            tris = _parse_obj(doc)
        else:
            raise MeshError(f"unrecognized mesh format for {name!r}")
    if len(tris) == 0:
        raise MeshError(f"mesh {name!r} contains no triangles")
    mesh = _weld(np.asarray(tris) * scale, name)
    return mesh


def _looks_binary_stl(doc: bytes) -> bool:
    if len(doc) < 84:
        return False
    (count,) = struct.unpack_from("<I", doc, 80)
    return len(doc) == 84 + count * 50


def _parse_binary_stl(doc: bytes) -> np.ndarray:
    (count,) = struct.unpack_from("<I", doc, 80)
    tris = np.empty((count, 3, 3))
    offset = 84
    for i in range(count):
        data = struct.unpack_from("<12fH", doc, offset)
        tris[i] = np.array(data[3:12]).reshape(3, 3)
        offset += 50
    return tris


def _parse_text_stl(doc: str) -> np.ndarray:
    tris = []
    current: list[list[float]] = []
    for line in doc.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "vertex":
            if len(parts) != 4:
                raise MeshError(f"malformed STL vertex line: {line.strip()!r}")
            current.append([float(p) for p in parts[1:4]])
        elif parts[0] == "endfacet":
            if len(current) != 3:
                raise MeshError("STL facet without exactly 3 vertices")
            tris.append(current)
            current = []
    return np.asarray(tris)


def _parse_obj(doc: str) -> np.ndarray:
    verts: list[list[float]] = []
    faces: list[list[int]] = []
    for line in doc.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            idx = [int(p.split("/")[0]) for p in parts[1:]]
            idx = [i - 1 if i > 0 else len(verts) + i for i in idx]
            if len(idx) < 3:
                raise MeshError(f"OBJ face with <3 vertices: {line.strip()!r}")
            for k in range(1, len(idx) - 1):  # fan-triangulate polygons
                faces.append([idx[0], idx[k], idx[k + 1]])
    if not verts or not faces:
        raise MeshError("OBJ content has no usable geometry")
    v = np.asarray(verts)
    return v[np.asarray(faces)]


def write_obj(vertices: np.ndarray, triangles: np.ndarray, name: str = "mesh") -> str:
    lines = [f"o {name}"]
    for x, y, z in np.asarray(vertices, dtype=float):
        lines.append(f"v {x:.9g} {y:.9g} {z:.9g}")
    for a, b, c in np.asarray(triangles, dtype=int) + 1:
        lines.append(f"f {a} {b} {c}")
    return "\n".join(lines) + "\n"
