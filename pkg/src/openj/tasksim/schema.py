"""Task definition files: JSON or YAML, schema version key `openj_task: 1`.

Unknown keys are rejected with their path so typos fail loudly; JSON and
YAML encodings of the same task parse to identical sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
import yaml

SCHEMA_KEY = "openj_task"
SCHEMA_VERSION = 1

ACTION_KINDS = ("reach", "grasp", "move", "place", "hold")
_TARGET_KINDS = ("reach", "move", "place")

_TOP_KEYS = {SCHEMA_KEY, "name", "default_context", "methods", "actions", "support"}
_ACTION_KEYS = {"kind", "target", "load_kg", "duration_s", "context", "frame", "name"}


class TaskError(ValueError):
    """Schema violation with a path-addressed message."""


@dataclass(frozen=True)
class TaskAction:
    kind: str
    duration_s: float
    target: Optional[np.ndarray] = None  # world meters, for reach/move/place
    load_kg: float = 0.0
    context: dict[str, Any] = field(default_factory=dict)
    frame: str = "hand_r"
    name: str = ""

    def __post_init__(self):
        if self.target is not None:
            object.__setattr__(self, "target", np.asarray(self.target, dtype=float))


@dataclass(frozen=True)
class TaskSequence:
    name: str
    actions: tuple[TaskAction, ...]
    default_context: dict[str, Any] = field(default_factory=dict)
    methods: tuple[str, ...] = ()
    support: str = "standing"


def parse_task(doc: str) -> TaskSequence:
    try:
        data = yaml.safe_load(doc)
    except yaml.YAMLError as exc:
        raise TaskError(f"task document is not valid YAML/JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise TaskError("task document must be a mapping")
    if data.get(SCHEMA_KEY) != SCHEMA_VERSION:
        raise TaskError(f"task document must declare '{SCHEMA_KEY}: {SCHEMA_VERSION}'")

    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise TaskError(f"unknown keys: {sorted(unknown)}")

    raw_actions = data.get("actions")
    if not isinstance(raw_actions, list) or not raw_actions:
        raise TaskError("actions: a task needs at least one action")

    actions = []
    for k, raw in enumerate(raw_actions):
        path = f"actions[{k}]"
        if not isinstance(raw, dict):
            raise TaskError(f"{path}: must be a mapping")
        unknown = set(raw) - _ACTION_KEYS
        if unknown:
            raise TaskError(f"{path}: unknown keys: {sorted(unknown)}")
        kind = raw.get("kind")
        if kind not in ACTION_KINDS:
            raise TaskError(f"{path}.kind: expected one of {ACTION_KINDS}, got {kind!r}")
        duration = raw.get("duration_s")
        if not isinstance(duration, (int, float)) or duration <= 0:
            raise TaskError(f"{path}.duration_s: must be a number > 0, got {duration!r}")
        load = raw.get("load_kg", 0.0)
        if not isinstance(load, (int, float)) or load < 0:
            raise TaskError(f"{path}.load_kg: must be a number >= 0, got {load!r}")
        target = raw.get("target")
        if kind in _TARGET_KINDS:
            if (
                not isinstance(target, (list, tuple))
                or len(target) != 3
                or not all(isinstance(v, (int, float)) for v in target)
            ):
                raise TaskError(f"{path}.target: {kind} needs [x, y, z] meters")
        elif target is not None:
            raise TaskError(f"{path}.target: not allowed for {kind!r} actions")
        context = raw.get("context", {})
        if not isinstance(context, dict):
            raise TaskError(f"{path}.context: must be a mapping")
        actions.append(
            TaskAction(
                kind=kind,
                duration_s=float(duration),
                target=None if target is None else np.asarray(target, dtype=float),
                load_kg=float(load),
                context=dict(context),
                frame=str(raw.get("frame", "hand_r")),
                name=str(raw.get("name", "")),
            )
        )

    methods = data.get("methods", [])
    if not isinstance(methods, list) or not all(isinstance(m, str) for m in methods):
        raise TaskError("methods: must be a list of method ids")
    default_context = data.get("default_context", {})
    if not isinstance(default_context, dict):
        raise TaskError("default_context: must be a mapping")
    support = data.get("support", "standing")
    if support not in ("standing", "sitting"):
        raise TaskError(f"support: expected standing|sitting, got {support!r}")

    return TaskSequence(
        name=str(data.get("name", "task")),
        actions=tuple(actions),
        default_context=default_context,
        methods=tuple(methods),
        support=support,
    )
