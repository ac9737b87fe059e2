"""Task sequences: parse, replay through the solver + assessments, accumulate
shift-level exposure (time-weighted whole-body score, composite lifting index)."""

from openj.tasksim.cli_index import composite_lifting_index, single_task_analysis
from openj.tasksim.schema import TaskAction, TaskSequence, TaskError, parse_task
from openj.tasksim.engine import StepResult, TimelineResult, simulate, time_weighted_reba

__all__ = [
    "TaskAction",
    "TaskSequence",
    "TaskError",
    "parse_task",
    "StepResult",
    "TimelineResult",
    "simulate",
    "time_weighted_reba",
    "composite_lifting_index",
    "single_task_analysis",
]
