"""Assemble a HumanModel from a kinematics document and its metadata sidecar."""

from __future__ import annotations

import hashlib

import numpy as np

from openj.geometry import transform
from openj.model.sidecar import Sidecar, parse_sidecar
from openj.model.types import (
    BodySegmentParams,
    HumanModel,
    JointSpec,
    ModelError,
    Primitive,
    SegmentSpec,
    _Node,
)
from openj.model.urdf import RawJoint, parse_urdf, urdf_kind


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse_model_description(kinematics_doc: str, metadata_doc: str) -> HumanModel:
    """Build and validate a mannequin from URDF-subset text plus YAML sidecar.

    Raises ModelError naming the offending joint for missing metadata,
    out-of-bounds neutral values, DOF mismatches, or a cyclic link graph.
    """
    urdf = parse_urdf(kinematics_doc)
    sidecar = parse_sidecar(metadata_doc)

    movable = [j for j in urdf.joints if j.type != "fixed"]
    for rj in movable:
        if rj.name not in sidecar.joints:
            raise ModelError(f"joint {rj.name} has no metadata sidecar entry")

    joints: list[JointSpec] = []
    for rj in movable:
        meta = sidecar.joints[rj.name]
        lo, hi = rj.lower, rj.upper
        if meta.limits_override is not None:
            lo, hi = meta.limits_override
        velocity = meta.velocity_limit
        if velocity is None:
            velocity = rj.velocity
        joints.append(
            JointSpec(
                name=rj.name,
                kind=urdf_kind(rj.type),
                axis=rj.axis,
                q_min=lo,
                q_max=hi,
                w=meta.weight,
                q_neutral=meta.neutral,
                velocity_limit=velocity,
            )
        )
    joint_pos = {j.name: i for i, j in enumerate(joints)}

    nodes, link_node = _build_tree(urdf.links, urdf.joints, joint_pos)
    segments = _build_segments(sidecar, urdf.joints, nodes, link_node)

    provenance = {
        "kinematics_sha256": _sha256(kinematics_doc),
        "sidecar_sha256": _sha256(metadata_doc),
        "parse_warnings": list(urdf.warnings),
        "robot_name": urdf.robot_name,
    }
    return HumanModel(joints, segments, nodes, provenance)


def _build_tree(links, raw_joints, joint_pos):
    children: dict[str, list[RawJoint]] = {}
    child_links = set()
    for rj in raw_joints:
        children.setdefault(rj.parent, []).append(rj)
        if rj.child in child_links:
            raise ModelError(f"link {rj.child} has two parent joints (cycle)")
        child_links.add(rj.child)

    roots = [name for name in links if name not in child_links]
    if len(roots) != 1:
        raise ModelError(f"link graph must have exactly one root, found {roots}")

    nodes: list[_Node] = [_Node(roots[0], -1, np.eye(4), None, None)]
    link_node = {roots[0]: 0}
    stack = [roots[0]]
    while stack:
        parent = stack.pop(0)
        for rj in children.get(parent, []):
            if rj.child not in links:
                raise ModelError(f"joint {rj.name} references unknown link {rj.child}")
            node = _Node(
                name=rj.child,
                parent=link_node[parent],
                origin=transform(translation=rj.origin_xyz),
                joint_index=joint_pos.get(rj.name),
                segment=None,
            )
            link_node[rj.child] = len(nodes)
            nodes.append(node)
            stack.append(rj.child)

    unreached = set(links) - set(link_node)
    if unreached:
        raise ModelError(f"links unreachable from root (cycle or orphan): {sorted(unreached)}")
    return nodes, link_node


def _build_segments(sidecar: Sidecar, raw_joints, nodes, link_node):
    joint_above = {rj.child: rj.name for rj in raw_joints}
    segment_links = set(sidecar.segments)
    segments = []
    # preserve tree (breadth-first) order so pelvis comes first
    for node in nodes:
        if node.name not in segment_links:
            continue
        meta = sidecar.segments[node.name]
        declared = meta.parent_joint
        actual = joint_above.get(node.name)
        if actual != declared:
            raise ModelError(
                f"segment {node.name}: sidecar parent_joint {declared!r} does not "
                f"match kinematics ({actual!r})"
            )
        # offset from the nearest ancestor segment frame (compose virtual origins)
        offset = np.zeros(3)
        idx = link_node[node.name]
        cur = nodes[idx]
        while True:
            offset = cur.origin[:3, 3] + offset
            if cur.parent < 0:
                break
            parent = nodes[cur.parent]
            if parent.name in segment_links:
                break
            cur = parent
        segments.append(
            SegmentSpec(
                name=node.name,
                parent_joint=declared if actual else "",
                offset=offset,
                primitive=Primitive(
                    meta.kind, meta.radius, meta.length, meta.axis, meta.shift
                ),
                bsp=BodySegmentParams(),
            )
        )
        node.segment = node.name
    if not segments:
        raise ModelError("sidecar declares no segments")
    return segments
