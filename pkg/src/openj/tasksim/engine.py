"""Sequence replay: per-action posture solve, assessment, exposure rollup."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from openj.assess import AssessmentResult, MethodFailure, PostureState, run_assessments
from openj.assess.base import AssessmentError
from openj.model import HumanModel
from openj.posture import PostureSolution, ReachTarget, SolveOptions, solve_posture
from openj.tasksim.cli_index import composite_lifting_index
from openj.tasksim.schema import TaskAction, TaskSequence
from openj.workspace import SceneMesh

_NIOSH_KEYS = ("h_cm", "v_cm", "d_cm", "a_deg", "f_per_min", "coupling")


@dataclass(frozen=True)
class StepResult:
    index: int
    action: TaskAction
    solution: Optional[PostureSolution]
    results: tuple  # AssessmentResult | MethodFailure entries
    duration_s: float
    context: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class TimelineResult:
    task: str
    steps: tuple[StepResult, ...]
    total_duration_s: float
    time_weighted_reba: Optional[float]
    composite_li: Optional[float]
    warnings: tuple[str, ...]


def _load_class(load_kg: float) -> int:
    if load_kg <= 10.0:
        return 1
    if load_kg <= 20.0:
        return 2
    return 3


def _merged_context(task: TaskSequence, action: TaskAction) -> dict[str, Any]:
    """defaults <- action overrides <- load injection (never clobbers)."""
    ctx = dict(task.default_context)
    ctx.update(action.context)
    ctx.setdefault("load_kg", action.load_kg)
    ctx.setdefault("force_load_kg", action.load_kg)
    ctx.setdefault("load_class", _load_class(action.load_kg))
    return ctx


def time_weighted_reba(steps: list[StepResult] | tuple[StepResult, ...]) -> float:
    """Duration-weighted mean of the whole-body grand scores across steps
    that produced one."""
    total = 0.0
    weight = 0.0
    for step in steps:
        for r in step.results:
            if isinstance(r, AssessmentResult) and r.method == "reba":
                total += r.grand_score * step.duration_s
                weight += step.duration_s
    if weight == 0.0:
        raise AssessmentError("no whole-body (reba) results present in the timeline")
    return total / weight


def simulate(
    model: HumanModel,
    scene: list[SceneMesh],
    task: TaskSequence,
    options: SolveOptions | None = None,
) -> TimelineResult:
    """Replay the sequence: solve toward each action target (hold/grasp keep
    the previous posture), assess each step, accumulate exposure. Infeasible
    steps are recorded as warnings and the sequence continues."""
    options = options or SolveOptions()
    warnings: list[str] = []
    steps: list[StepResult] = []
    q = model.q_neutral
    lifting_subtasks: list[dict] = []

    for i, action in enumerate(task.actions):
        solution = None
        if action.target is not None:
            solution = solve_posture(
                model,
                [ReachTarget(action.frame, action.target,
                             tolerance=options.position_tolerance)],
                options,
            )
            # start the next solve from here even when infeasible (continuity)
            q = solution.q
            if not solution.feasible:
                warnings.append(
                    f"step {i} ({action.kind}): target infeasible, best residual "
                    f"{max(solution.residuals):.4f} m"
                )
        ctx = _merged_context(task, action)
        state = PostureState.from_posture(model, q, task.support, ctx)
        results = tuple(run_assessments(state, list(task.methods)))
        for r in results:
            if isinstance(r, MethodFailure):
                warnings.append(f"step {i} ({action.kind}): {r.method}: {r.error}")
        if (
            "niosh" in task.methods
            and action.load_kg > 0
            and all(k in ctx for k in _NIOSH_KEYS)
        ):
            lifting_subtasks.append({k: ctx[k] for k in (*_NIOSH_KEYS, "load_kg",
                                                          "duration_class") if k in ctx})
        steps.append(
            StepResult(
                index=i,
                action=action,
                solution=solution,
                results=results,
                duration_s=action.duration_s,
                context=ctx,
            )
        )

    twr = None
    try:
        twr = time_weighted_reba(steps)
    except AssessmentError:
        pass
    cli = None
    if lifting_subtasks:
        try:
            cli = composite_lifting_index(lifting_subtasks)
        except AssessmentError as exc:
            warnings.append(f"composite lifting index unavailable: {exc}")

    total = float(sum(s.duration_s for s in steps))
    return TimelineResult(
        task=task.name,
        steps=tuple(steps),
        total_duration_s=total,
        time_weighted_reba=twr,
        composite_li=cli,
        warnings=tuple(warnings),
    )
