"""Headless figure rendering: risk-tinted mannequin snapshots and reach
envelopes, written as PNG next to the delimited output."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from openj.model import HumanModel, forward_kinematics
from openj.report.colors import RiskColor
from openj.workspace import ReachEnvelope, SceneMesh


def _segment_lines(model: HumanModel, q) -> dict[str, tuple[np.ndarray, np.ndarray, float]]:
    fk = forward_kinematics(model, q)
    lines = {}
    for seg in model.segments:
        tf = fk[seg.name]
        s0, s1 = seg.primitive.endpoints
        p0 = tf[:3, :3] @ s0 + tf[:3, 3]
        p1 = tf[:3, :3] @ s1 + tf[:3, 3]
        lines[seg.name] = (p0, p1, seg.primitive.radius)
    return lines


def save_posture_figure(
    path: str | Path,
    model: HumanModel,
    q,
    colors: Optional[dict[str, RiskColor]] = None,
    scene: Iterable[SceneMesh] = (),
    title: str = "",
) -> Path:
    """Render the posed mannequin as thick capsule strokes, tinted by the
    per-segment risk colors when given (neutral grey otherwise)."""
    from openj.anthro.scaling import base_name

    fig = plt.figure(figsize=(7, 7))
    ax = fig.add_subplot(projection="3d")
    for name, (p0, p1, radius) in _segment_lines(model, q).items():
        if colors and base_name(name) in colors:
            rgb = tuple(c / 255 for c in colors[base_name(name)].rgb)
        else:
            rgb = (0.45, 0.45, 0.5)
        ax.plot(*zip(p0, p1), linewidth=radius * 250, color=rgb,
                solid_capstyle="round")
    for mesh in scene:
        tris = mesh.triangle_corners
        for tri in tris[: min(len(tris), 400)]:
            loop = np.vstack([tri, tri[:1]])
            ax.plot(loop[:, 0], loop[:, 1], loop[:, 2], color="0.75", linewidth=0.5)
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_zlabel("z (m)")
    if title:
        ax.set_title(title)
    _equal_aspect(ax)
    path = Path(path)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return path


def save_envelope_figure(path: str | Path, env: ReachEnvelope,
                         model: Optional[HumanModel] = None, q=None) -> Path:
    fig = plt.figure(figsize=(7, 7))
    ax = fig.add_subplot(projection="3d")
    v = env.hull_vertices
    if len(env.hull_triangles):
        ax.plot_trisurf(v[:, 0], v[:, 1], v[:, 2], triangles=env.hull_triangles,
                        alpha=0.35, color="tab:blue", edgecolor="none")
    else:
        ax.plot(v[:, 0], v[:, 1], v[:, 2], color="tab:blue")
    if model is not None and q is not None:
        for _, (p0, p1, radius) in _segment_lines(model, q).items():
            ax.plot(*zip(p0, p1), linewidth=radius * 250, color="0.5",
                    solid_capstyle="round")
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_zlabel("z (m)")
    ax.set_title(f"reach envelope: {env.frame} ({env.sample_count} samples)")
    _equal_aspect(ax)
    path = Path(path)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return path


def _equal_aspect(ax) -> None:
    limits = np.array([ax.get_xlim3d(), ax.get_ylim3d(), ax.get_zlim3d()])
    centers = limits.mean(axis=1)
    radius = (limits[:, 1] - limits[:, 0]).max() / 2
    ax.set_xlim3d(centers[0] - radius, centers[0] + radius)
    ax.set_ylim3d(centers[1] - radius, centers[1] + radius)
    ax.set_zlim3d(centers[2] - radius, centers[2] + radius)
