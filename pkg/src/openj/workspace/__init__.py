"""Workspace geometry: meshes, reach envelopes, vision cones, occlusion,
clearance queries."""

from openj.workspace.clearance import ClearanceResult, clearance
from openj.workspace.envelope import (
    CHAIN_PRESETS,
    EnvelopeError,
    ReachEnvelope,
    envelope_to_obj,
    point_reachable,
    reach_envelope,
)
from openj.workspace.meshio import MeshError, SceneMesh, load_mesh, write_obj
from openj.workspace.raycast import occlusion_check, ray_triangle_hits
from openj.workspace.vision import ConeAngles, VisionError, VisionField, vision_classify

__all__ = [
    "ClearanceResult",
    "clearance",
    "CHAIN_PRESETS",
    "EnvelopeError",
    "ReachEnvelope",
    "envelope_to_obj",
    "point_reachable",
    "reach_envelope",
    "MeshError",
    "SceneMesh",
    "load_mesh",
    "write_obj",
    "occlusion_check",
    "ray_triangle_hits",
    "ConeAngles",
    "VisionError",
    "VisionField",
    "vision_classify",
]
