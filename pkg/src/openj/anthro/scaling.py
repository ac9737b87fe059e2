"""Three-tier segment scaling and scaled-model construction.

Tier 1: direct ANSUR column at the profile's percentile (0 mm transformation).
Tier 2: OLS prediction from (stature, weight, sitting height) when r^2 > 0.7.
Tier 3: Winter/Drillis stature proportionality, with a logged warning.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from openj.anthro.database import (
    AnthroDatabase,
    AnthroError,
    load_default_database,
    percentile_dimensions,
)
from openj.anthro.regression import (
    SITTING_HEIGHT_DIM,
    RegressionSet,
    fit_tier2_regressions,
    load_derived_dimensions,
)
from openj.data import load_table
from openj.model import HumanModel, JointSpec, PostureVector
from openj.model.types import _Node

logger = logging.getLogger(__name__)

# segments are scaled by base name; bilateral pairs share one dimension
BASE_SEGMENTS = (
    "pelvis",
    "lumbar",
    "thorax",
    "neck",
    "head",
    "upper_arm",
    "forearm",
    "hand",
    "thigh",
    "shank",
    "foot",
)
BILATERAL = ("upper_arm", "forearm", "hand", "thigh", "shank", "foot")


def base_name(segment: str) -> str:
    return segment[:-2] if segment.endswith(("_l", "_r")) else segment


@dataclass(frozen=True)
class TargetProfile:
    """Scaling target: sex, stature (mm), weight (kg), optional sitting height (mm).

    percentile_spec records, per survey column, the percentile this profile
    was generated from; Tier 1 consumes it.
    """

    sex: str
    stature: float
    weight: float
    sitting_height: Optional[float] = None
    percentile_spec: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.sex not in ("male", "female"):
            raise AnthroError(f"sex must be 'male' or 'female', got {self.sex!r}")
        if not (1000.0 < self.stature < 2300.0):
            raise AnthroError(
                f"stature must be within (1000, 2300) mm, got {self.stature}"
            )
        if not (30.0 < self.weight < 200.0):
            raise AnthroError(f"weight must be within (30, 200) kg, got {self.weight}")

    @classmethod
    def from_percentile(
        cls, db: AnthroDatabase, sex: str, percentile: float
    ) -> "TargetProfile":
        dims = percentile_dimensions(db, sex, percentile)
        spec = {name: percentile for name in dims}
        return cls(
            sex=sex,
            stature=dims["stature"],
            weight=dims["weightkg"],
            sitting_height=dims["sittingheight"],
            percentile_spec=spec,
        )


@dataclass(frozen=True)
class SegmentDim:
    length_mm: float
    tier_used: int
    source_note: str


class SegmentDimensions(dict):
    """Mapping segment name -> SegmentDim covering every model segment."""

    @property
    def warnings(self) -> list[str]:
        return [
            f"{name}: tier 3 proportionality fallback ({dim.source_note})"
            for name, dim in self.items()
            if dim.tier_used == 3
        ]


def _tier1_map() -> dict[str, str]:
    return {row["segment"]: row["ansur_column"] for row in load_table("tier1_map.csv")}


def _winter_ratios() -> dict[str, tuple[float, str]]:
    return {
        row["segment"]: (float(row["stature_ratio"]), row["source_citation"])
        for row in load_table("winter.csv")
    }


def scale_segments(
    profile: TargetProfile,
    db: AnthroDatabase,
    reg: RegressionSet,
    segments: tuple[str, ...] = BASE_SEGMENTS,
) -> SegmentDimensions:
    """Resolve one length per base segment through the tier pipeline.

    Returns dimensions for the actual model segments (bilateral expanded);
    provenance is carried in tier_used/source_note per entry.
    """
    tier1 = _tier1_map()
    winter = _winter_ratios()
    derived = load_derived_dimensions()
    # percentile value per column, honoring per-dimension percentiles
    mask = db.sex_mask(profile.sex) if profile.percentile_spec else None
    percentiles = {
        col: float(np.percentile(db.column(col)[mask], p, method="linear"))
        for col, p in profile.percentile_spec.items()
    }

    sitting = profile.sitting_height
    if sitting is None:
        aux = reg.get(profile.sex, SITTING_HEIGHT_DIM)
        sitting = aux.predict(profile.stature, profile.weight, 0.0)

    resolved: dict[str, SegmentDim] = {}
    for seg in segments:
        if seg not in winter:
            raise AnthroError(f"unknown segment {seg!r}")
        # Tier 1: percentile-generated profile plus a direct column mapping
        col = tier1.get(seg)
        if col is not None and col in profile.percentile_spec and percentiles:
            resolved[seg] = SegmentDim(
                length_mm=percentiles[col],
                tier_used=1,
                source_note=f"ANSUR column {col} at P{profile.percentile_spec[col]:g}",
            )
            continue
        # Tier 2: eligible regression
        model = None
        if seg in derived:
            try:
                model = reg.get(profile.sex, seg)
            except AnthroError:
                model = None
        if model is not None and model.tier2_eligible:
            resolved[seg] = SegmentDim(
                length_mm=model.predict(profile.stature, profile.weight, sitting),
                tier_used=2,
                source_note=f"OLS r2={model.r_squared:.3f} on (stature, weight, sitting height)",
            )
            continue
        # Tier 3: proportionality fallback
        ratio, citation = winter[seg]
        note = f"stature ratio {ratio} ({citation})"
        if model is not None and not model.tier2_eligible:
            note += f"; regression rejected at r2={model.r_squared:.3f}"
        logger.warning("segment %s scaled by tier-3 proportionality (%s)", seg, note)
        resolved[seg] = SegmentDim(
            length_mm=ratio * profile.stature, tier_used=3, source_note=note
        )

    out = SegmentDimensions()
    for seg, dim in resolved.items():
        if seg in BILATERAL:
            out[f"{seg}_l"] = dim
            out[f"{seg}_r"] = dim
        else:
            out[seg] = dim
    return out


def build_scaled_model(
    profile: TargetProfile,
    db: AnthroDatabase | None = None,
    reg: RegressionSet | None = None,
) -> HumanModel:
    """Full pipeline: tiers -> geometry rescale -> body segment parameters."""
    from openj.anthro.bsp import body_segment_parameters
    from openj.model import load_reference_model

    if db is None:
        db = load_default_database()
    if reg is None:
        reg = fit_tier2_regressions(db)

    dims = scale_segments(profile, db, reg)
    reference = load_reference_model(populate_bsp=False)
    scaled = _rescale_geometry(reference, dims)

    bsp = body_segment_parameters(dims, profile.weight, profile.sex, model=scaled)
    scaled = scaled.with_bsp(bsp, profile.weight)
    scaled.provenance.update(
        {
            "profile": {
                "sex": profile.sex,
                "stature_mm": profile.stature,
                "weight_kg": profile.weight,
                "sitting_height_mm": profile.sitting_height,
                "percentile_spec": dict(profile.percentile_spec),
            },
            "database_sha256": db.source_hash,
            "scaling": {
                name: {"length_mm": d.length_mm, "tier": d.tier_used, "note": d.source_note}
                for name, d in dims.items()
            },
            "scaling_warnings": dims.warnings,
        }
    )
    return scaled


def _rescale_geometry(reference: HumanModel, dims: SegmentDimensions) -> HumanModel:
    factors = {
        seg.name: (dims[seg.name].length_mm / 1000.0) / seg.primitive.length
        for seg in reference.segments
    }

    # each node origin is expressed in the nearest ancestor segment's frame
    def ancestor_factor(node_idx: int) -> float:
        idx = reference._nodes[node_idx].parent
        while idx >= 0:
            node = reference._nodes[idx]
            if node.segment is not None:
                return factors[node.segment]
            idx = node.parent
        return 1.0

    nodes = []
    for i, node in enumerate(reference._nodes):
        origin = node.origin.copy()
        origin[:3, 3] *= ancestor_factor(i)
        nodes.append(_Node(node.name, node.parent, origin, node.joint_index, node.segment))

    segments = []
    for seg in reference.segments:
        f = factors[seg.name]
        prim = seg.primitive
        segments.append(
            replace(
                seg,
                offset=seg.offset * ancestor_factor(reference._segment_node[seg.name]),
                primitive=replace(
                    prim,
                    length=prim.length * f,
                    radius=prim.radius * f,
                    shift=prim.shift * f,
                ),
            )
        )

    # standing pelvis height follows the scaled leg chain
    leg = (
        dims["thigh_l"].length_mm / 1000.0
        + dims["shank_l"].length_mm / 1000.0
        + 0.039 / 0.152 * dims["foot_l"].length_mm / 1000.0
    )
    joints = []
    for j in reference.joints:
        if j.name == "pelvis_tz":
            joints.append(
                JointSpec(
                    name=j.name,
                    kind=j.kind,
                    axis=j.axis,
                    q_min=0.485 * leg,
                    q_max=1.062 * leg,
                    w=j.w,
                    q_neutral=leg,
                    velocity_limit=j.velocity_limit,
                )
            )
        else:
            joints.append(j)

    return HumanModel(joints, segments, nodes, reference.provenance)


def neutral_posture(model: HumanModel) -> PostureVector:
    return model.neutral_posture()
