#!/usr/bin/env python3
"""Regenerate the bundled reference mannequin (URDF subset + YAML sidecar).

Skeleton proportions follow the Drillis/Contini stature fractions as
tabulated by Winter (2009, Fig. 4.1) at a 1.750 m reference stature.
Joint range-of-motion defaults are transcribed from AAOS (1965) averages;
free-base bounds are engine conventions. Run from the repo root:

    python scripts/gen_reference_model.py
"""

import math
from pathlib import Path

H = 1.750  # reference stature, m

DIMS = {
    "hip_h": 0.530 * H,
    "pelvis": 0.078 * H,
    "lumbar": 0.095 * H,
    "thorax": 0.115 * H,
    "neck": 0.052 * H,
    "head": 0.130 * H,
    "sh_half": 0.1295 * H,
    "hip_half": 0.0955 * H,
    "upper_arm": 0.186 * H,
    "forearm": 0.146 * H,
    "hand": 0.108 * H,
    "thigh": 0.245 * H,
    "shank": 0.246 * H,
    "ankle_h": 0.039 * H,
    "foot": 0.152 * H,
}

DEG = math.pi / 180.0
AAOS = "AAOS (1965) average range of motion"
AAOS_SPLIT = "AAOS (1965) thoracolumbar ROM, split across lumbar/thoracic"
CONV = "engine convention (free base)"


def J(name, jtype, parent, child, axis, lo, hi, xyz=(0, 0, 0), vel=None):
    if vel is None:
        vel = 1.0 if jtype == "prismatic" else 3.0
    return dict(name=name, type=jtype, parent=parent, child=child, axis=axis,
                lo=lo, hi=hi, xyz=xyz, vel=vel)


def dof_chain(base, parent, final_link, axes_types, xyz):
    """Chain of scalar joints between two links via virtual intermediates."""
    out = []
    n = len(axes_types)
    for i, (suffix, jtype, axis, lo, hi) in enumerate(axes_types):
        child = final_link if i == n - 1 else f"{base}_v{i + 1}"
        par = parent if i == 0 else f"{base}_v{i}"
        out.append(J(f"{base}_{suffix}", jtype, par, child, axis, lo, hi,
                     xyz if i == 0 else (0, 0, 0)))
    return out


def build_joints():
    d = DIMS
    joints = []
    joints += dof_chain("pelvis", "world", "pelvis", [
        ("tx", "prismatic", (1, 0, 0), -0.5, 0.5),
        ("ty", "prismatic", (0, 1, 0), -0.5, 0.5),
        ("tz", "prismatic", (0, 0, 1), 0.45, 0.985),
        ("rz", "revolute", (0, 0, 1), -math.pi, math.pi),
        ("ry", "revolute", (0, 1, 0), -30 * DEG, 30 * DEG),
        ("rx", "revolute", (1, 0, 0), -30 * DEG, 30 * DEG),
    ], (0, 0, 0))
    joints += dof_chain("lumbar", "pelvis", "lumbar", [
        ("flexion", "revolute", (0, 1, 0), -15 * DEG, 45 * DEG),
        ("bend", "revolute", (1, 0, 0), -20 * DEG, 20 * DEG),
        ("twist", "revolute", (0, 0, 1), -25 * DEG, 25 * DEG),
    ], (0, 0, d["pelvis"]))
    joints += dof_chain("thoracic", "lumbar", "thorax", [
        ("flexion", "revolute", (0, 1, 0), -15 * DEG, 45 * DEG),
        ("bend", "revolute", (1, 0, 0), -20 * DEG, 20 * DEG),
        ("twist", "revolute", (0, 0, 1), -25 * DEG, 25 * DEG),
    ], (0, 0, d["lumbar"]))
    joints += dof_chain("neck", "thorax", "neck", [
        ("flexion", "revolute", (0, 1, 0), -60 * DEG, 50 * DEG),
        ("bend", "revolute", (1, 0, 0), -45 * DEG, 45 * DEG),
        ("twist", "revolute", (0, 0, 1), -80 * DEG, 80 * DEG),
    ], (0, 0, d["thorax"]))
    joints.append(dict(name="head_mount", type="fixed", parent="neck",
                       child="head", axis=(0, 0, 1), lo=None, hi=None,
                       xyz=(0, 0, d["neck"]), vel=None))
    for side, sy, ax_abd in (("l", 1.0, (1, 0, 0)), ("r", -1.0, (-1, 0, 0))):
        joints += dof_chain(f"shoulder_{side}", "thorax", f"upper_arm_{side}", [
            ("flexion", "revolute", (0, -1, 0), -60 * DEG, 180 * DEG),
            ("abduction", "revolute", ax_abd, -50 * DEG, 170 * DEG),
            ("rotation", "revolute", (0, 0, -1), -90 * DEG, 90 * DEG),
        ], (0, sy * d["sh_half"], d["thorax"]))
        joints += dof_chain(f"elbow_{side}", f"upper_arm_{side}", f"forearm_{side}", [
            ("flexion", "revolute", (0, -1, 0), 0.0, 145 * DEG),
            ("pronation", "revolute", (0, 0, -1), -85 * DEG, 80 * DEG),
        ], (0, 0, -d["upper_arm"]))
        joints += dof_chain(f"wrist_{side}", f"forearm_{side}", f"hand_{side}", [
            ("flexion", "revolute", (0, -1, 0), -70 * DEG, 75 * DEG),
            ("deviation", "revolute", (1, 0, 0), -20 * DEG, 35 * DEG),
        ], (0, 0, -d["forearm"]))
    for side, sy, ax_abd in (("l", 1.0, (1, 0, 0)), ("r", -1.0, (-1, 0, 0))):
        joints += dof_chain(f"hip_{side}", "pelvis", f"thigh_{side}", [
            ("flexion", "revolute", (0, -1, 0), -30 * DEG, 120 * DEG),
            ("abduction", "revolute", ax_abd, -30 * DEG, 45 * DEG),
            ("rotation", "revolute", (0, 0, -1), -45 * DEG, 45 * DEG),
        ], (0, sy * d["hip_half"], 0))
        joints += dof_chain(f"knee_{side}", f"thigh_{side}", f"shank_{side}", [
            ("flexion", "revolute", (0, 1, 0), 0.0, 135 * DEG),
        ], (0, 0, -d["thigh"]))
        joints += dof_chain(f"ankle_{side}", f"shank_{side}", f"foot_{side}", [
            ("flexion", "revolute", (0, -1, 0), -50 * DEG, 20 * DEG),
            ("inversion", "revolute", (1, 0, 0), -35 * DEG, 25 * DEG),
        ], (0, 0, -d["shank"]))
    return joints


# joint sources for the sidecar citation column
SOURCES = {
    "pelvis": CONV,
    "lumbar": AAOS_SPLIT,
    "thoracic": AAOS_SPLIT,
    "neck": AAOS,
    "shoulder": AAOS,
    "elbow": AAOS,
    "wrist": AAOS,
    "hip": AAOS,
    "knee": AAOS,
    "ankle": AAOS,
}

# comfort weights: trunk/neck and base rotations penalized twice as hard as
# limbs; free-base translation unpenalized
def weight_for(joint_name):
    group = joint_name.split("_")[0]
    if group == "pelvis":
        return 0.0 if joint_name.split("_")[1].startswith("t") else 2.0
    if group in ("lumbar", "thoracic", "neck"):
        return 2.0
    return 1.0


def neutral_for(joint_name):
    return DIMS["hip_h"] if joint_name == "pelvis_tz" else 0.0


SEGMENTS = {
    "pelvis": ("pelvis_rx", "capsule", 0.115, "pelvis", (0, 0, 1), (0, 0, 0)),
    "lumbar": ("lumbar_twist", "capsule", 0.105, "lumbar", (0, 0, 1), (0, 0, 0)),
    "thorax": ("thoracic_twist", "capsule", 0.115, "thorax", (0, 0, 1), (0, 0, 0)),
    "neck": ("neck_twist", "cylinder", 0.050, "neck", (0, 0, 1), (0, 0, 0)),
    "head": ("head_mount", "capsule", 0.080, "head", (0, 0, 1), (0, 0, 0)),
    "upper_arm_l": ("shoulder_l_rotation", "capsule", 0.045, "upper_arm", (0, 0, -1), (0, 0, 0)),
    "upper_arm_r": ("shoulder_r_rotation", "capsule", 0.045, "upper_arm", (0, 0, -1), (0, 0, 0)),
    "forearm_l": ("elbow_l_pronation", "capsule", 0.040, "forearm", (0, 0, -1), (0, 0, 0)),
    "forearm_r": ("elbow_r_pronation", "capsule", 0.040, "forearm", (0, 0, -1), (0, 0, 0)),
    "hand_l": ("wrist_l_deviation", "capsule", 0.040, "hand", (0, 0, -1), (0, 0, 0)),
    "hand_r": ("wrist_r_deviation", "capsule", 0.040, "hand", (0, 0, -1), (0, 0, 0)),
    "thigh_l": ("hip_l_rotation", "capsule", 0.070, "thigh", (0, 0, -1), (0, 0, 0)),
    "thigh_r": ("hip_r_rotation", "capsule", 0.070, "thigh", (0, 0, -1), (0, 0, 0)),
    "shank_l": ("knee_l_flexion", "capsule", 0.050, "shank", (0, 0, -1), (0, 0, 0)),
    "shank_r": ("knee_r_flexion", "capsule", 0.050, "shank", (0, 0, -1), (0, 0, 0)),
    "foot_l": ("ankle_l_inversion", "capsule", 0.034, "foot", (1, 0, 0), (-0.0665, 0, -0.03425)),
    "foot_r": ("ankle_r_inversion", "capsule", 0.034, "foot", (1, 0, 0), (-0.0665, 0, -0.03425)),
}


def emit_urdf(joints):
    lines = ['<?xml version="1.0"?>', '<robot name="openj_reference_41dof">']
    links = ["world"]
    for j in joints:
        if j["child"] not in links:
            links.append(j["child"])
    for name in links:
        lines.append(f'  <link name="{name}"/>')
    for j in joints:
        lines.append(f'  <joint name="{j["name"]}" type="{j["type"]}">')
        lines.append(f'    <parent link="{j["parent"]}"/>')
        lines.append(f'    <child link="{j["child"]}"/>')
        x, y, z = j["xyz"]
        lines.append(f'    <origin xyz="{x:.6f} {y:.6f} {z:.6f}"/>')
        ax, ay, az = j["axis"]
        lines.append(f'    <axis xyz="{ax} {ay} {az}"/>')
        if j["type"] != "fixed":
            lines.append(
                f'    <limit lower="{j["lo"]:.9f}" upper="{j["hi"]:.9f}" '
                f'velocity="{j["vel"]}"/>'
            )
        lines.append("  </joint>")
    lines.append("</robot>")
    return "\n".join(lines) + "\n"


def emit_sidecar(joints):
    lines = [
        "# DHM metadata for the bundled reference mannequin.",
        "# Comfort weights and neutral values are editable engine defaults;",
        "# joint limits live in the kinematics file, citations here.",
        "openj_meta: 1",
        "joints:",
    ]
    for j in joints:
        if j["type"] == "fixed":
            continue
        name = j["name"]
        lines.append(f"  {name}:")
        lines.append(f"    weight: {weight_for(name)}")
        lines.append(f"    neutral: {neutral_for(name):.6f}")
        lines.append(f'    source: "{SOURCES[name.split("_")[0]]}"')
    lines.append("segments:")
    for seg, (parent_joint, kind, radius, dim_key, axis, shift) in SEGMENTS.items():
        lines.append(f"  {seg}:")
        lines.append(f"    parent_joint: {parent_joint}")
        lines.append(f"    kind: {kind}")
        lines.append(f"    radius: {radius}")
        lines.append(f"    length: {DIMS[dim_key]:.6f}")
        lines.append(f"    axis: [{axis[0]}, {axis[1]}, {axis[2]}]")
        if any(shift):
            lines.append(f"    shift: [{shift[0]}, {shift[1]}, {shift[2]}]")
    lines.append("reference_stature_m: 1.750")
    return "\n".join(lines) + "\n"


def main():
    out = Path(__file__).resolve().parents[1] / "src" / "openj" / "data" / "reference"
    out.mkdir(parents=True, exist_ok=True)
    joints = build_joints()
    (out / "reference_model.urdf").write_text(emit_urdf(joints))
    (out / "reference_model.meta.yaml").write_text(emit_sidecar(joints))
    n_dof = sum(1 for j in joints if j["type"] != "fixed")
    print(f"wrote reference model: {n_dof} DOF, {len(SEGMENTS)} segments")


if __name__ == "__main__":
    main()
