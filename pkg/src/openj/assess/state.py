"""Canonical assessment input: anatomical angles extracted from a posture."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from openj.model import HumanModel, PostureVector, forward_kinematics

# flag thresholds (degrees); boundary values land in the higher-risk state
ABDUCTION_FLAG_DEG = 30.0
SHOULDER_RAISED_FLAG = False  # no scapular DOF: user-supplied via context


@dataclass(frozen=True)
class ErgonomicAngles:
    """Anatomical-convention angles in degrees, plus posture-derived flags."""

    trunk_flexion: float
    trunk_side_bend: float
    trunk_twist: float
    neck_flexion: float
    neck_side_bend: float
    neck_twist: float
    upper_arm_elevation_l: float
    upper_arm_elevation_r: float
    shoulder_raised_l: bool
    shoulder_raised_r: bool
    upper_arm_abducted_l: bool
    upper_arm_abducted_r: bool
    elbow_flexion_l: float
    elbow_flexion_r: float
    forearm_rotation_l: float
    forearm_rotation_r: float
    wrist_flexion_l: float
    wrist_flexion_r: float
    wrist_deviation_l: float
    wrist_deviation_r: float
    knee_flexion_l: float
    knee_flexion_r: float

    def side(self, name: str, side: str) -> Any:
        return getattr(self, f"{name}_{side}")


def _deg(x: float) -> float:
    return math.degrees(x)


def extract_ergonomic_angles(model: HumanModel, q: PostureVector | np.ndarray) -> ErgonomicAngles:
    """Map the joint vector to anatomical angles.

    Trunk angles are the lumbar+thoracic group sums per axis; upper-arm
    elevation is the FK angle between the shoulder-elbow vector and the
    trunk's downward axis, signed by its forward component.
    """
    arr = model.check_q(q)
    j = model.joint_index
    fk = forward_kinematics(model, arr)

    def elevation(side: str) -> float:
        shoulder = fk[f"upper_arm_{side}"][:3, 3]
        elbow = fk[f"forearm_{side}"][:3, 3]
        arm = elbow - shoulder
        thorax = fk["thorax"]
        down = -thorax[:3, 2]
        norm = np.linalg.norm(arm)
        if norm < 1e-12:
            return 0.0
        cosang = np.clip(np.dot(arm, down) / norm, -1.0, 1.0)
        angle = math.degrees(math.acos(cosang))
        forward = float(np.dot(arm, thorax[:3, 0]))
        return angle if forward >= -1e-12 else -angle

    return ErgonomicAngles(
        trunk_flexion=_deg(arr[j("lumbar_flexion")] + arr[j("thoracic_flexion")]),
        trunk_side_bend=_deg(arr[j("lumbar_bend")] + arr[j("thoracic_bend")]),
        trunk_twist=_deg(arr[j("lumbar_twist")] + arr[j("thoracic_twist")]),
        neck_flexion=_deg(arr[j("neck_flexion")]),
        neck_side_bend=_deg(arr[j("neck_bend")]),
        neck_twist=_deg(arr[j("neck_twist")]),
        upper_arm_elevation_l=elevation("l"),
        upper_arm_elevation_r=elevation("r"),
        shoulder_raised_l=SHOULDER_RAISED_FLAG,
        shoulder_raised_r=SHOULDER_RAISED_FLAG,
        upper_arm_abducted_l=abs(_deg(arr[j("shoulder_l_abduction")])) >= ABDUCTION_FLAG_DEG,
        upper_arm_abducted_r=abs(_deg(arr[j("shoulder_r_abduction")])) >= ABDUCTION_FLAG_DEG,
        elbow_flexion_l=_deg(arr[j("elbow_l_flexion")]),
        elbow_flexion_r=_deg(arr[j("elbow_r_flexion")]),
        forearm_rotation_l=_deg(arr[j("elbow_l_pronation")]),
        forearm_rotation_r=_deg(arr[j("elbow_r_pronation")]),
        wrist_flexion_l=_deg(arr[j("wrist_l_flexion")]),
        wrist_flexion_r=_deg(arr[j("wrist_r_flexion")]),
        wrist_deviation_l=_deg(arr[j("wrist_l_deviation")]),
        wrist_deviation_r=_deg(arr[j("wrist_r_deviation")]),
        knee_flexion_l=_deg(arr[j("knee_l_flexion")]),
        knee_flexion_r=_deg(arr[j("knee_r_flexion")]),
    )


@dataclass(frozen=True)
class PostureState:
    """Joint vector + derived angles + support + method-specific context.

    Angles are always recomputed from q at construction (never stored stale);
    build instances through :meth:`from_posture`.
    """

    q: np.ndarray
    angles: ErgonomicAngles
    support: str  # "standing" | "sitting"
    context: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.support not in ("standing", "sitting"):
            raise ValueError(f"support must be standing|sitting, got {self.support!r}")

    @classmethod
    def from_posture(
        cls,
        model: HumanModel,
        q: PostureVector | np.ndarray,
        support: str = "standing",
        context: dict[str, Any] | None = None,
    ) -> "PostureState":
        arr = model.check_q(q)
        return cls(
            q=arr.copy(),
            angles=extract_ergonomic_angles(model, arr),
            support=support,
            context=dict(context or {}),
        )
