"""Pluggable ergonomic assessment framework with five built-in methods."""

from openj.assess.base import (
    AssessmentError,
    AssessmentResult,
    ContextField,
    ErgonomicAssessment,
    MethodDescriptor,
    MethodFailure,
    validate_context,
)
from openj.assess.registry import (
    get_method,
    register,
    registered_ids,
    run_assessments,
    unregister,
)
from openj.assess.state import ErgonomicAngles, PostureState, extract_ergonomic_angles

__all__ = [
    "AssessmentError",
    "AssessmentResult",
    "ContextField",
    "ErgonomicAssessment",
    "MethodDescriptor",
    "MethodFailure",
    "validate_context",
    "register",
    "unregister",
    "get_method",
    "registered_ids",
    "run_assessments",
    "ErgonomicAngles",
    "PostureState",
    "extract_ergonomic_angles",
]
