"""Metadata sidecar: per-joint comfort data plus segment geometry.

YAML schema (version key ``openj_meta: 1``)::

    openj_meta: 1
    joints:
      <joint name>:
        weight: 1.0           # comfort weight, >= 0
        neutral: 0.0          # rad or m
        limits_override: [lo, hi]   # optional
        velocity_limit: 3.0         # optional, rad/s or m/s
        source: "citation"
    segments:
      <segment name>:
        parent_joint: <joint or fixed-attachment name>
        kind: capsule | cylinder
        radius: 0.05
        length: 0.3
        axis: [0, 0, -1]      # local length direction
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import yaml

from openj.model.types import ModelError

SCHEMA_KEY = "openj_meta"
SCHEMA_VERSION = 1


@dataclass
class JointMeta:
    weight: float
    neutral: float
    source: str
    limits_override: Optional[tuple[float, float]] = None
    velocity_limit: Optional[float] = None


@dataclass
class SegmentMeta:
    parent_joint: str
    kind: str
    radius: float
    length: float
    axis: np.ndarray
    shift: np.ndarray


@dataclass
class Sidecar:
    joints: dict[str, JointMeta]
    segments: dict[str, SegmentMeta]
    extras: dict = field(default_factory=dict)


def parse_sidecar(doc: str) -> Sidecar:
    try:
        data = yaml.safe_load(doc)
    except yaml.YAMLError as exc:
        raise ModelError(f"metadata sidecar is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ModelError("metadata sidecar must be a mapping")
    if data.get(SCHEMA_KEY) != SCHEMA_VERSION:
        raise ModelError(
            f"metadata sidecar must declare '{SCHEMA_KEY}: {SCHEMA_VERSION}'"
        )

    joints = {}
    for name, raw in (data.get("joints") or {}).items():
        if raw is None:
            raw = {}
        override = raw.get("limits_override")
        if override is not None:
            if len(override) != 2:
                raise ModelError(f"joint {name}: limits_override needs [lo, hi]")
            override = (float(override[0]), float(override[1]))
        joints[name] = JointMeta(
            weight=float(raw.get("weight", 1.0)),
            neutral=float(raw.get("neutral", 0.0)),
            source=str(raw.get("source", "")),
            limits_override=override,
            velocity_limit=(
                float(raw["velocity_limit"]) if "velocity_limit" in raw else None
            ),
        )

    segments = {}
    for name, raw in (data.get("segments") or {}).items():
        for key in ("parent_joint", "kind", "radius", "length", "axis"):
            if key not in raw:
                raise ModelError(f"segment {name}: sidecar entry missing {key!r}")
        segments[name] = SegmentMeta(
            parent_joint=str(raw["parent_joint"]),
            kind=str(raw["kind"]),
            radius=float(raw["radius"]),
            length=float(raw["length"]),
            axis=np.asarray(raw["axis"], dtype=float),
            shift=np.asarray(raw.get("shift", [0.0, 0.0, 0.0]), dtype=float),
        )

    extras = {
        k: v for k, v in data.items() if k not in (SCHEMA_KEY, "joints", "segments")
    }
    return Sidecar(joints, segments, extras)
