"""Body segment parameters from the bundled ratio tables.

mass_i = ratio_i(sex) * total mass; CoM sits at com_ratio * length along the
segment's primitive axis; gyration radii are per-axis ratios of length.
Ratio rounding residue is folded into the thorax so masses close exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from openj.anthro.database import AnthroError
from openj.anthro.scaling import SegmentDim, SegmentDimensions, base_name
from openj.data import load_table
from openj.model import BodySegmentParams, HumanModel

MASS_CLOSURE_REL_TOL = 1e-3  # 0.1%
RESIDUAL_SEGMENT = "thorax"


@dataclass(frozen=True)
class DeLevaRow:
    mass_ratio: float
    com_ratio: float
    rg: tuple[float, float, float]
    citation: str


def load_deleva() -> dict[tuple[str, str], DeLevaRow]:
    table = {}
    for row in load_table("deleva.csv"):
        table[(row["segment"], row["sex"])] = DeLevaRow(
            mass_ratio=float(row["mass_ratio"]),
            com_ratio=float(row["com_ratio"]),
            rg=(
                float(row["rg_sagittal"]),
                float(row["rg_transverse"]),
                float(row["rg_longitudinal"]),
            ),
            citation=row["source_citation"],
        )
    return table


def body_segment_parameters(
    dims: SegmentDimensions,
    total_mass: float,
    sex: str,
    model: HumanModel | None = None,
) -> dict[str, BodySegmentParams]:
    """Per-segment BSP for every entry in dims.

    The model supplies primitive axes for CoM placement; without one, the
    reference model's conventions are used.
    """
    if total_mass <= 0:
        raise AnthroError(f"total mass must be > 0, got {total_mass}")
    table = load_deleva()
    if model is None:
        from openj.model import load_reference_model

        model = load_reference_model(populate_bsp=False)

    masses = {}
    for name in dims:
        key = (base_name(name), sex)
        if key not in table:
            raise AnthroError(f"segment {name!r} missing from the ratio table")
        masses[name] = table[key].mass_ratio * total_mass
    residual = total_mass - sum(masses.values())
    masses[RESIDUAL_SEGMENT] += residual

    out = {}
    for name, dim in dims.items():
        row = table[(base_name(name), sex)]
        prim = model.segment(name).primitive
        length_m = dim.length_mm / 1000.0
        out[name] = BodySegmentParams(
            mass=masses[name],
            com_offset=prim.shift + prim.axis * (row.com_ratio * length_m),
            gyration_radii=tuple(r * length_m for r in row.rg),
        )
    return out


def apply_bsp(model: HumanModel, total_mass: float, sex: str) -> HumanModel:
    """Populate BSP on a model using its current primitive lengths."""
    dims = SegmentDimensions(
        {
            seg.name: SegmentDim(
                length_mm=seg.primitive.length * 1000.0,
                tier_used=3,
                source_note="model primitive length",
            )
            for seg in model.segments
        }
    )
    return model.with_bsp(
        body_segment_parameters(dims, total_mass, sex, model=model), total_mass
    )
