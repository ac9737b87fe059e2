"""Method registry: built-ins and third-party plugins share one path."""

from __future__ import annotations

from openj.assess.base import (
    AssessmentError,
    AssessmentResult,
    ErgonomicAssessment,
    MethodFailure,
    validate_context,
)
from openj.assess.state import PostureState

_registry: dict[str, ErgonomicAssessment] = {}


def register(method: ErgonomicAssessment, replace: bool = False) -> None:
    if method.id in _registry and not replace:
        raise AssessmentError(f"method {method.id!r} already registered")
    _registry[method.id] = method


def unregister(method_id: str) -> None:
    _registry.pop(method_id, None)


def get_method(method_id: str) -> ErgonomicAssessment:
    try:
        return _registry[method_id]
    except KeyError:
        raise AssessmentError(
            f"unknown method {method_id!r}; registered: {registered_ids()}"
        ) from None


def registered_ids() -> list[str]:
    return sorted(_registry)


def run_assessments(
    state: PostureState, methods: list[str]
) -> list[AssessmentResult | MethodFailure]:
    """Run methods in request order; a failing method yields a structured
    failure entry without aborting the rest of the batch."""
    out: list[AssessmentResult | MethodFailure] = []
    for method_id in methods:
        method = get_method(method_id)  # unknown ids abort: caller error
        problems = validate_context(method.descriptor(), state)
        if problems:
            out.append(
                MethodFailure(
                    method=method_id,
                    error="missing or invalid context fields",
                    missing_fields=tuple(problems),
                )
            )
            continue
        try:
            out.append(method.assess(state))
        except Exception as exc:  # plugin isolation: never poison the batch
            out.append(MethodFailure(method=method_id, error=str(exc)))
    return out


def _register_builtins() -> None:
    from openj.assess.niosh import NioshAssessment
    from openj.assess.owas import OwasAssessment
    from openj.assess.reba import RebaAssessment
    from openj.assess.rula import RulaAssessment
    from openj.assess.snook import SnookAssessment

    for cls in (RulaAssessment, RebaAssessment, OwasAssessment, NioshAssessment,
                SnookAssessment):
        method = cls()
        if method.id not in _registry:
            register(method)


_register_builtins()
