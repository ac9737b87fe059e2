"""Plugin contract for ergonomic assessment methods."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any

from openj.assess.state import PostureState


class AssessmentError(ValueError):
    """Raised for invalid assessment input (missing/invalid context, etc.)."""


@dataclass(frozen=True)
class ContextField:
    """One required context input (PARTIAL-automation data)."""

    name: str
    kind: str  # "number" | "flag" | "choice" | "string"
    unit: str = ""
    choices: tuple[str, ...] = ()
    description: str = ""

    def validate(self, value: Any) -> str | None:
        """None when valid, else a human-readable problem."""
        if self.kind == "number":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                return f"{self.name}: expected a number ({self.unit}), got {value!r}"
        elif self.kind == "flag":
            if not isinstance(value, bool):
                return f"{self.name}: expected true/false, got {value!r}"
        elif self.kind == "choice":
            if value not in self.choices:
                return f"{self.name}: expected one of {list(self.choices)}, got {value!r}"
        elif self.kind == "string":
            if not isinstance(value, str):
                return f"{self.name}: expected text, got {value!r}"
        return None


@dataclass(frozen=True)
class MethodDescriptor:
    id: str
    automation_level: str  # "FULL" | "PARTIAL"
    required_context_fields: tuple[ContextField, ...]

    def __post_init__(self):
        names = [f.name for f in self.required_context_fields]
        if len(set(names)) != len(names):
            raise AssessmentError(f"{self.id}: duplicate required context fields")


@dataclass(frozen=True)
class AssessmentResult:
    method: str
    grand_score: float
    level: tuple[int, str]  # (category id, label)
    subscores: dict[str, Any] = field(default_factory=dict)
    consumed_context: tuple[str, ...] = ()
    automation: str = "PARTIAL"


@dataclass(frozen=True)
class MethodFailure:
    """Structured per-method error entry (batch runs continue past it)."""

    method: str
    error: str
    missing_fields: tuple[str, ...] = ()


class ErgonomicAssessment(ABC):
    """Base class third-party methods subclass and register."""

    @abstractmethod
    def assess(self, state: PostureState) -> AssessmentResult: ...

    @property
    @abstractmethod
    def automation_level(self) -> str: ...

    @property
    @abstractmethod
    def required_context_fields(self) -> tuple[ContextField, ...]: ...

    @property
    @abstractmethod
    def id(self) -> str: ...

    def descriptor(self) -> MethodDescriptor:
        return MethodDescriptor(
            id=self.id,
            automation_level=self.automation_level,
            required_context_fields=tuple(self.required_context_fields),
        )


def validate_context(method: MethodDescriptor, state: PostureState) -> list[str]:
    """Missing/invalid required fields, by name with the problem. Empty = ok."""
    problems = []
    for fld in method.required_context_fields:
        if fld.name not in state.context:
            problems.append(f"{fld.name}: missing ({fld.kind}{', ' + fld.unit if fld.unit else ''})")
            continue
        issue = fld.validate(state.context[fld.name])
        if issue:
            problems.append(issue)
    return problems
