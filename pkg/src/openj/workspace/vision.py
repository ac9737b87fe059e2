"""Asymmetric binocular vision cones: central vs peripheral classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class VisionError(ValueError):
    pass


@dataclass(frozen=True)
class ConeAngles:
    """Half-angles (degrees) per direction around the gaze axis."""

    nasal: float = 30.0
    temporal: float = 30.0
    superior: float = 30.0
    inferior: float = 30.0

    def __post_init__(self):
        for name in ("nasal", "temporal", "superior", "inferior"):
            v = getattr(self, name)
            if not (0.0 < v < 110.0):
                raise VisionError(f"half-angle {name} must be in (0, 110) deg, got {v}")


@dataclass(frozen=True)
class VisionField:
    """Central (functional) and peripheral (awareness) fields, per-eye origin
    offsets in the head frame, gaze direction in the head frame."""

    central: ConeAngles = field(default_factory=ConeAngles)
    peripheral: ConeAngles = field(
        default_factory=lambda: ConeAngles(60.0, 60.0, 60.0, 60.0)
    )
    left_eye_offset: np.ndarray = field(
        default_factory=lambda: np.array([0.08, 0.032, 0.12])
    )
    right_eye_offset: np.ndarray = field(
        default_factory=lambda: np.array([0.08, -0.032, 0.12])
    )
    gaze: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))

    def __post_init__(self):
        for name in ("nasal", "temporal", "superior", "inferior"):
            if getattr(self.peripheral, name) < getattr(self.central, name):
                raise VisionError(
                    f"peripheral {name} half-angle must be >= central"
                )
        g = np.asarray(self.gaze, dtype=float)
        n = np.linalg.norm(g)
        if n == 0:
            raise VisionError("gaze must be a nonzero vector")
        object.__setattr__(self, "gaze", g / n)
        object.__setattr__(
            self, "left_eye_offset", np.asarray(self.left_eye_offset, dtype=float)
        )
        object.__setattr__(
            self, "right_eye_offset", np.asarray(self.right_eye_offset, dtype=float)
        )


def _eye_angles(head_pose: np.ndarray, offset: np.ndarray, gaze: np.ndarray,
                target: np.ndarray) -> tuple[float, float, float]:
    """(horizontal deg, vertical deg, total deg) of eye->target vs gaze."""
    R = head_pose[:3, :3]
    eye = R @ offset + head_pose[:3, 3]
    d = np.asarray(target, dtype=float) - eye
    if np.linalg.norm(d) < 1e-12:
        raise VisionError("target coincides with the eye origin")
    fwd = R @ gaze
    up = R @ np.array([0.0, 0.0, 1.0])
    left = np.cross(up, fwd)
    left /= np.linalg.norm(left)
    up_ortho = np.cross(fwd, left)

    x = float(d @ fwd)
    y = float(d @ left)
    z = float(d @ up_ortho)
    horizontal = math.degrees(math.atan2(y, x))
    vertical = math.degrees(math.atan2(z, x))
    total = math.degrees(
        math.acos(np.clip(x / np.linalg.norm(d), -1.0, 1.0))
    )
    return horizontal, vertical, total


def _within(cone: ConeAngles, horizontal: float, vertical: float, eye_side: str) -> bool:
    # positive horizontal = toward the subject's left
    if eye_side == "left":
        h_limit = cone.temporal if horizontal >= 0 else cone.nasal
    else:
        h_limit = cone.nasal if horizontal >= 0 else cone.temporal
    v_limit = cone.superior if vertical >= 0 else cone.inferior
    return (horizontal / h_limit) ** 2 + (vertical / v_limit) ** 2 <= 1.0


def vision_classify(
    head_pose: np.ndarray, field_: VisionField, target: np.ndarray
) -> tuple[str, float]:
    """Classify a world-space target as central / peripheral / outside and
    report the gaze angle of the best (binocular) eye."""
    results = []
    for side, offset in (("left", field_.left_eye_offset),
                         ("right", field_.right_eye_offset)):
        h, v, total = _eye_angles(head_pose, offset, field_.gaze, target)
        if _within(field_.central, h, v, side):
            rank = 0
        elif _within(field_.peripheral, h, v, side):
            rank = 1
        else:
            rank = 2
        results.append((rank, total))
    rank, angle = min(results)
    return ("central", "peripheral", "outside")[rank], angle
