"""openj: headless digital human modeling and ergonomic assessment engine.

A 41-DOF parametric mannequin scaled from population data, comfort-weighted
posture prediction, five standard ergonomic assessment methods, reach/vision
geometry against workplace meshes, and task-sequence exposure simulation.
Exposed as a library, a CLI (``openj``) and a local HTTP session service.
"""

__version__ = "0.1.0"

from openj.model import (  # noqa: F401
    BodySegmentParams,
    HumanModel,
    JointSpec,
    PostureVector,
    SegmentSpec,
    center_of_mass,
    forward_kinematics,
    jacobian,
    load_reference_model,
    parse_model_description,
)
