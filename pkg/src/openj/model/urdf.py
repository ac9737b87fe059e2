"""Parser for the URDF subset used by the mannequin kinematics file.

Accepted elements: <robot>, <link>, <joint> with child <origin>, <axis>,
<limit>, <parent>, <child>. Joint types: revolute, prismatic, fixed.
Anything else is skipped and reported in the warning list.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from openj.model.types import ModelError

_KNOWN_JOINT_CHILDREN = {"origin", "axis", "limit", "parent", "child"}
_KIND_FROM_URDF = {"revolute": "revolute", "prismatic": "translational"}


@dataclass
class RawJoint:
    name: str
    type: str  # revolute | prismatic | fixed
    parent: str
    child: str
    origin_xyz: np.ndarray
    axis: np.ndarray
    lower: Optional[float] = None
    upper: Optional[float] = None
    velocity: Optional[float] = None


@dataclass
class UrdfDocument:
    robot_name: str
    links: list[str]
    joints: list[RawJoint]
    warnings: list[str] = field(default_factory=list)


def _parse_vector(text: Optional[str], default) -> np.ndarray:
    if not text:
        return np.asarray(default, dtype=float)
    parts = text.replace(",", " ").split()
    if len(parts) != 3:
        raise ModelError(f"expected 3 values in vector attribute, got {text!r}")
    return np.array([float(p) for p in parts])


def parse_urdf(doc: str) -> UrdfDocument:
    try:
        root = ET.fromstring(doc)
    except ET.ParseError as exc:
        raise ModelError(f"kinematics document is not valid XML: {exc}") from exc
    if root.tag != "robot":
        raise ModelError(f"expected <robot> root element, found <{root.tag}>")

    warnings: list[str] = []
    links: list[str] = []
    joints: list[RawJoint] = []

    for el in root:
        if el.tag == "link":
            name = el.get("name")
            if not name:
                raise ModelError("link without a name attribute")
            links.append(name)
            for sub in el:
                warnings.append(f"link {name}: ignored element <{sub.tag}>")
        elif el.tag == "joint":
            joints.append(_parse_joint(el, warnings))
        else:
            warnings.append(f"ignored element <{el.tag}>")

    if not links:
        raise ModelError("kinematics document contains no links")
    return UrdfDocument(root.get("name", "model"), links, joints, warnings)


def _parse_joint(el: ET.Element, warnings: list[str]) -> RawJoint:
    name = el.get("name")
    jtype = el.get("type")
    if not name:
        raise ModelError("joint without a name attribute")
    if jtype not in ("revolute", "prismatic", "fixed"):
        raise ModelError(f"joint {name}: unsupported type {jtype!r}")

    parent = child = None
    origin = np.zeros(3)
    axis = np.array([0.0, 0.0, 1.0])
    lower = upper = velocity = None
    for sub in el:
        if sub.tag not in _KNOWN_JOINT_CHILDREN:
            warnings.append(f"joint {name}: ignored element <{sub.tag}>")
            continue
        if sub.tag == "parent":
            parent = sub.get("link")
        elif sub.tag == "child":
            child = sub.get("link")
        elif sub.tag == "origin":
            origin = _parse_vector(sub.get("xyz"), np.zeros(3))
            if sub.get("rpy") not in (None, "0 0 0"):
                warnings.append(f"joint {name}: origin rpy ignored (subset)")
        elif sub.tag == "axis":
            axis = _parse_vector(sub.get("xyz"), [0, 0, 1])
        elif sub.tag == "limit":
            if sub.get("lower") is not None:
                lower = float(sub.get("lower"))
            if sub.get("upper") is not None:
                upper = float(sub.get("upper"))
            if sub.get("velocity") is not None:
                velocity = float(sub.get("velocity"))
    if parent is None or child is None:
        raise ModelError(f"joint {name}: missing parent or child link")
    if jtype != "fixed" and (lower is None or upper is None):
        raise ModelError(f"joint {name}: movable joint requires limit bounds")
    return RawJoint(name, jtype, parent, child, origin, axis, lower, upper, velocity)


def urdf_kind(jtype: str) -> str:
    return _KIND_FROM_URDF[jtype]
