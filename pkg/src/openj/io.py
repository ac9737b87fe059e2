"""Lossless file round-tripping for scaled models and postures (JSON)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

import numpy as np

from openj.model import (
    BodySegmentParams,
    HumanModel,
    JointSpec,
    ModelError,
    Primitive,
    SegmentSpec,
)
from openj.model.types import _Node

MODEL_KEY = "openj_model"
POSTURE_KEY = "openj_posture"
VERSION = 1


def model_to_dict(model: HumanModel) -> dict:
    return {
        MODEL_KEY: VERSION,
        "joints": [
            {
                "name": j.name,
                "kind": j.kind,
                "axis": j.axis.tolist(),
                "q_min": j.q_min,
                "q_max": j.q_max,
                "w": j.w,
                "q_neutral": j.q_neutral,
                "velocity_limit": j.velocity_limit,
            }
            for j in model.joints
        ],
        "segments": [
            {
                "name": s.name,
                "parent_joint": s.parent_joint,
                "offset": s.offset.tolist(),
                "primitive": {
                    "kind": s.primitive.kind,
                    "radius": s.primitive.radius,
                    "length": s.primitive.length,
                    "axis": s.primitive.axis.tolist(),
                    "shift": s.primitive.shift.tolist(),
                },
                "bsp": {
                    "mass": s.bsp.mass,
                    "com_offset": s.bsp.com_offset.tolist(),
                    "gyration_radii": s.bsp.gyration_radii.tolist(),
                },
            }
            for s in model.segments
        ],
        "nodes": [
            {
                "name": n.name,
                "parent": n.parent,
                "origin_xyz": n.origin[:3, 3].tolist(),
                "joint": None if n.joint_index is None else model.joints[n.joint_index].name,
                "segment": n.segment,
            }
            for n in model._nodes
        ],
        "provenance": model.provenance,
    }


def model_from_dict(data: dict) -> HumanModel:
    if data.get(MODEL_KEY) != VERSION:
        raise ModelError(f"model file must declare '{MODEL_KEY}: {VERSION}'")
    joints = [
        JointSpec(
            name=j["name"],
            kind=j["kind"],
            axis=np.asarray(j["axis"]),
            q_min=j["q_min"],
            q_max=j["q_max"],
            w=j["w"],
            q_neutral=j["q_neutral"],
            velocity_limit=j.get("velocity_limit"),
        )
        for j in data["joints"]
    ]
    joint_pos = {j.name: i for i, j in enumerate(joints)}
    segments = [
        SegmentSpec(
            name=s["name"],
            parent_joint=s["parent_joint"],
            offset=np.asarray(s["offset"]),
            primitive=Primitive(
                kind=s["primitive"]["kind"],
                radius=s["primitive"]["radius"],
                length=s["primitive"]["length"],
                axis=np.asarray(s["primitive"]["axis"]),
                shift=np.asarray(s["primitive"]["shift"]),
            ),
            bsp=BodySegmentParams(
                mass=s["bsp"]["mass"],
                com_offset=np.asarray(s["bsp"]["com_offset"]),
                gyration_radii=np.asarray(s["bsp"]["gyration_radii"]),
            ),
        )
        for s in data["segments"]
    ]
    nodes = []
    for n in data["nodes"]:
        origin = np.eye(4)
        origin[:3, 3] = n["origin_xyz"]
        nodes.append(
            _Node(
                name=n["name"],
                parent=n["parent"],
                origin=origin,
                joint_index=None if n["joint"] is None else joint_pos[n["joint"]],
                segment=n["segment"],
            )
        )
    return HumanModel(joints, segments, nodes, data.get("provenance", {}))


def save_model(model: HumanModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=1, sort_keys=True))


def load_model(path: str | Path) -> HumanModel:
    return model_from_dict(json.loads(Path(path).read_text()))


def posture_to_dict(
    q, support: str = "standing", context: Optional[dict[str, Any]] = None,
    model_ref: str = "",
) -> dict:
    return {
        POSTURE_KEY: VERSION,
        "model_ref": model_ref,
        "q": np.asarray(q, dtype=float).tolist(),
        "support": support,
        "context": dict(context or {}),
    }


def posture_from_dict(data: dict) -> tuple[np.ndarray, str, dict, str]:
    if data.get(POSTURE_KEY) != VERSION:
        raise ModelError(f"posture file must declare '{POSTURE_KEY}: {VERSION}'")
    return (
        np.asarray(data["q"], dtype=float),
        data.get("support", "standing"),
        dict(data.get("context", {})),
        data.get("model_ref", ""),
    )


def save_posture(path: str | Path, q, support: str = "standing",
                 context: Optional[dict] = None, model_ref: str = "") -> None:
    Path(path).write_text(
        json.dumps(posture_to_dict(q, support, context, model_ref), indent=1)
    )


def load_posture(path: str | Path) -> tuple[np.ndarray, str, dict, str]:
    return posture_from_dict(json.loads(Path(path).read_text()))
