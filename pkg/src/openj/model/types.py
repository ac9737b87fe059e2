"""Domain types for the 41-DOF parametric mannequin."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

# Scalar DOF the mannequin must expose, by joint-name prefix.
DOF_LAYOUT = {
    "pelvis": 6,
    "spine": 6,  # lumbar 3 + thoracic 3
    "neck": 3,
    "shoulder": 6,
    "elbow": 4,
    "wrist": 4,
    "hip": 6,
    "knee": 2,
    "ankle": 4,
}
TOTAL_DOF = 41

# joint-name prefix -> layout group
_GROUP_PREFIXES = {
    "pelvis": "pelvis",
    "lumbar": "spine",
    "thoracic": "spine",
    "neck": "neck",
    "shoulder": "shoulder",
    "elbow": "elbow",
    "wrist": "wrist",
    "hip": "hip",
    "knee": "knee",
    "ankle": "ankle",
}

FORBIDDEN_GROUPS = ("finger", "thumb")


class ModelError(ValueError):
    """Raised when a model description violates its contract."""


@dataclass(frozen=True)
class JointSpec:
    """One scalar degree of freedom.

    Angles in radians for revolute joints, meters for translational ones.
    ``w`` is the dimensionless comfort weight and ``q_neutral`` the neutral
    value used by the comfort objective.
    """

    name: str
    kind: str  # "revolute" | "translational"
    axis: np.ndarray  # unit 3-vector in parent frame
    q_min: float
    q_max: float
    w: float = 1.0
    q_neutral: float = 0.0
    velocity_limit: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "axis", np.asarray(self.axis, dtype=float))
        if self.kind not in ("revolute", "translational"):
            raise ModelError(f"joint {self.name}: unknown kind {self.kind!r}")
        if abs(np.linalg.norm(self.axis) - 1.0) > 1e-9:
            raise ModelError(f"joint {self.name}: axis is not unit length")
        if not (self.q_min <= self.q_neutral <= self.q_max):
            raise ModelError(
                f"joint {self.name}: neutral {self.q_neutral} outside limits "
                f"[{self.q_min}, {self.q_max}]"
            )
        if self.w < 0:
            raise ModelError(f"joint {self.name}: comfort weight must be >= 0")


@dataclass(frozen=True)
class BodySegmentParams:
    """Per-segment mass properties (de Leva style ratios already applied)."""

    mass: float = 0.0
    com_offset: np.ndarray = field(default_factory=lambda: np.zeros(3))
    gyration_radii: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "com_offset", np.asarray(self.com_offset, dtype=float))
        object.__setattr__(
            self, "gyration_radii", np.asarray(self.gyration_radii, dtype=float)
        )
        if self.mass < 0:
            raise ModelError("segment mass must be >= 0")
        if (self.gyration_radii < 0).any():
            raise ModelError("gyration radii must be >= 0")


@dataclass(frozen=True)
class Primitive:
    kind: str  # "capsule" | "cylinder"
    radius: float
    length: float
    axis: np.ndarray  # local unit direction of the length axis
    shift: np.ndarray = field(default_factory=lambda: np.zeros(3))  # local start point

    def __post_init__(self):
        object.__setattr__(self, "axis", np.asarray(self.axis, dtype=float))
        object.__setattr__(self, "shift", np.asarray(self.shift, dtype=float))
        if self.kind not in ("capsule", "cylinder"):
            raise ModelError(f"unknown primitive kind {self.kind!r}")
        if self.length <= 0 or self.radius <= 0:
            raise ModelError("primitive radius and length must be > 0")

    @property
    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Local start/end of the length axis."""
        return self.shift, self.shift + self.axis * self.length


@dataclass(frozen=True)
class SegmentSpec:
    """A body segment: one rigid link carrying geometry and mass."""

    name: str
    parent_joint: str  # name of the scalar joint (or fixed attachment) above it
    offset: np.ndarray  # meters, from parent segment frame
    primitive: Primitive
    bsp: BodySegmentParams = field(default_factory=BodySegmentParams)

    def __post_init__(self):
        object.__setattr__(self, "offset", np.asarray(self.offset, dtype=float))


@dataclass(frozen=True)
class PostureVector:
    """Joint values ordered by the model's joint order (rad / m)."""

    q: np.ndarray
    clamped: bool = False

    def __post_init__(self):
        object.__setattr__(self, "q", np.asarray(self.q, dtype=float).copy())

    def __len__(self):
        return len(self.q)


@dataclass
class _Node:
    """Internal kinematic-tree node (one URDF link)."""

    name: str
    parent: int  # index into nodes, -1 for root
    origin: np.ndarray  # constant 4x4 offset from parent frame
    joint_index: Optional[int]  # index into HumanModel.joints, None if fixed
    segment: Optional[str]  # segment name when this link carries geometry


class HumanModel:
    """Immutable kinematic tree with 41 scalar DOF.

    Construction validates the DOF layout, tree shape and joint invariants;
    instances are safe to share across threads.
    """

    def __init__(self, joints, segments, nodes, provenance=None):
        self.joints: tuple[JointSpec, ...] = tuple(joints)
        self.segments: tuple[SegmentSpec, ...] = tuple(segments)
        self._nodes: tuple[_Node, ...] = tuple(nodes)
        self.provenance: dict = dict(provenance or {})
        self._validate()
        self._index()

    # -- validation -------------------------------------------------------

    def _validate(self):
        n = len(self.joints)
        if n != TOTAL_DOF:
            raise ModelError(f"model must have {TOTAL_DOF} DOF, found {n}")
        groups: dict[str, int] = {g: 0 for g in DOF_LAYOUT}
        for j in self.joints:
            prefix = j.name.split("_")[0]
            for bad in FORBIDDEN_GROUPS:
                if bad in j.name:
                    raise ModelError(f"finger joints are out of scope: {j.name}")
            group = _GROUP_PREFIXES.get(prefix)
            if group is None:
                raise ModelError(f"joint {j.name} does not map to a DOF group")
            groups[group] += 1
        if groups != DOF_LAYOUT:
            raise ModelError(f"DOF layout mismatch: {groups} != {DOF_LAYOUT}")

        # tree shape: single root named pelvis, no cycles (parent < child by
        # construction order is enforced here)
        roots = [i for i, nd in enumerate(self._nodes) if nd.parent == -1]
        if len(roots) != 1:
            raise ModelError("segment graph must have a single root")
        for i, nd in enumerate(self._nodes):
            if nd.parent >= i:
                raise ModelError("segment graph contains a cycle")
        seg_names = [s.name for s in self.segments]
        if len(set(seg_names)) != len(seg_names):
            raise ModelError("duplicate segment names")
        root_segment = next(
            (nd.segment for nd in self._nodes if nd.segment is not None), None
        )
        if root_segment != "pelvis":
            raise ModelError("segment graph must be rooted at pelvis")

    def _index(self):
        self._joint_pos = {j.name: i for i, j in enumerate(self.joints)}
        self._segment_map = {s.name: s for s in self.segments}
        self._segment_node = {
            nd.segment: i for i, nd in enumerate(self._nodes) if nd.segment
        }
        self._q_min = np.array([j.q_min for j in self.joints])
        self._q_max = np.array([j.q_max for j in self.joints])
        self._q_neutral = np.array([j.q_neutral for j in self.joints])
        self._weights = np.array([j.w for j in self.joints])
        self._velocity_limits = np.array(
            [
                j.velocity_limit
                if j.velocity_limit is not None
                else (3.0 if j.kind == "revolute" else 1.0)
                for j in self.joints
            ]
        )
        # node index holding each joint (for FK bookkeeping)
        self._joint_node = {}
        for i, nd in enumerate(self._nodes):
            if nd.joint_index is not None:
                self._joint_node[nd.joint_index] = i

    # -- introspection ----------------------------------------------------

    @property
    def dof(self) -> int:
        return len(self.joints)

    @property
    def dof_layout(self) -> dict:
        return dict(DOF_LAYOUT)

    def joint_names(self) -> list[str]:
        return [j.name for j in self.joints]

    def joint_index(self, name: str) -> int:
        try:
            return self._joint_pos[name]
        except KeyError:
            raise ModelError(f"unknown joint {name!r}") from None

    def segment(self, name: str) -> SegmentSpec:
        try:
            return self._segment_map[name]
        except KeyError:
            raise ModelError(f"unknown segment {name!r}") from None

    def segment_names(self) -> list[str]:
        return [s.name for s in self.segments]

    @property
    def q_min(self) -> np.ndarray:
        return self._q_min.copy()

    @property
    def q_max(self) -> np.ndarray:
        return self._q_max.copy()

    @property
    def q_neutral(self) -> np.ndarray:
        return self._q_neutral.copy()

    @property
    def comfort_weights(self) -> np.ndarray:
        return self._weights.copy()

    @property
    def velocity_limits(self) -> np.ndarray:
        return self._velocity_limits.copy()

    def neutral_posture(self) -> PostureVector:
        return PostureVector(self._q_neutral, clamped=True)

    def clamp(self, q: np.ndarray) -> PostureVector:
        return PostureVector(np.clip(q, self._q_min, self._q_max), clamped=True)

    def check_q(self, q) -> np.ndarray:
        arr = q.q if isinstance(q, PostureVector) else np.asarray(q, dtype=float)
        if arr.shape != (self.dof,):
            raise ModelError(f"posture vector must have shape ({self.dof},), got {arr.shape}")
        return arr

    def total_mass(self) -> float:
        return float(sum(s.bsp.mass for s in self.segments))

    def with_bsp(self, bsp_by_segment: dict, total_mass: float) -> "HumanModel":
        """Return a copy with body segment parameters replaced.

        Enforces mass closure: sum of masses within 0.1% of total_mass.
        """
        segs = []
        for s in self.segments:
            if s.name not in bsp_by_segment:
                raise ModelError(f"missing BSP for segment {s.name}")
            segs.append(replace(s, bsp=bsp_by_segment[s.name]))
        msum = sum(s.bsp.mass for s in segs)
        if total_mass > 0 and abs(msum - total_mass) > 1e-3 * total_mass:
            raise ModelError(
                f"segment masses sum to {msum:.4f} kg, expected {total_mass:.4f} kg"
            )
        return HumanModel(self.joints, segs, self._nodes, self.provenance)
