"""The 41-DOF parametric mannequin: types, file formats, kinematics."""

from __future__ import annotations

from openj.model.builder import parse_model_description
from openj.model.kinematics import (
    center_of_mass,
    chain_info,
    fk_point_batch,
    forward_kinematics,
    jacobian,
)
from openj.model.types import (
    BodySegmentParams,
    HumanModel,
    JointSpec,
    ModelError,
    PostureVector,
    Primitive,
    SegmentSpec,
)

__all__ = [
    "BodySegmentParams",
    "HumanModel",
    "JointSpec",
    "ModelError",
    "PostureVector",
    "Primitive",
    "SegmentSpec",
    "parse_model_description",
    "forward_kinematics",
    "jacobian",
    "center_of_mass",
    "fk_point_batch",
    "chain_info",
    "load_reference_model",
]


def load_reference_model(
    total_mass_kg: float = 81.5, sex: str = "male", populate_bsp: bool = True
) -> HumanModel:
    """Parse the bundled reference mannequin.

    With populate_bsp, segment masses/CoMs are filled from the bundled
    ratio tables for the given total body mass and sex.
    """
    from openj.data import reference_path

    model = parse_model_description(
        reference_path("reference_model.urdf").read_text(),
        reference_path("reference_model.meta.yaml").read_text(),
    )
    if populate_bsp:
        from openj.anthro.bsp import apply_bsp

        model = apply_bsp(model, total_mass_kg, sex)
    return model
