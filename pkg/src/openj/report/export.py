"""Structured report export: canonical JSON (schema `openj_report: 1`) and a
derived CSV with one row per (step, method)."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Optional

import jsonschema

import openj
from openj.assess.base import AssessmentError, AssessmentResult, MethodFailure
from openj.data import schema_path
from openj.model import HumanModel
from openj.tasksim import TimelineResult

CSV_COLUMNS = [
    "step",
    "action",
    "method",
    "grand_score",
    "level",
    "level_label",
    "duration_s",
    "feasible",
    "error",
]


def _sanitize(value: Any) -> Any:
    """JSON-safe copies: numpy scalars to python, non-finite to 'infinite'."""
    import numpy as np

    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_sanitize(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else "infinite"
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def _result_entry(result: AssessmentResult | MethodFailure) -> dict:
    if isinstance(result, MethodFailure):
        return {
            "method": result.method,
            "error": result.error,
            "missing_fields": list(result.missing_fields),
        }
    return {
        "method": result.method,
        "grand_score": _sanitize(result.grand_score),
        "level": int(result.level[0]),
        "level_label": result.level[1],
        "automation": result.automation,
        "subscores": _sanitize(result.subscores),
        "consumed_context": list(result.consumed_context),
    }


def build_report(
    source: TimelineResult | list | AssessmentResult | MethodFailure,
    model: Optional[HumanModel] = None,
    posture_q=None,
) -> dict:
    """Normalize results or a timeline into the report document."""
    doc: dict[str, Any] = {
        "openj_report": 1,
        "tool": {"name": "openj", "version": openj.__version__},
        "warnings": [],
    }
    if model is not None:
        doc["model"] = _sanitize(model.provenance)

    if isinstance(source, TimelineResult):
        doc["task"] = source.task
        steps = []
        for step in source.steps:
            entry: dict[str, Any] = {
                "index": step.index,
                "action": step.action.kind,
                "frame": step.action.frame,
                "duration_s": step.duration_s,
                "results": [_result_entry(r) for r in step.results],
            }
            if step.solution is not None:
                entry["posture_q"] = _sanitize(step.solution.q)
                entry["feasible"] = bool(step.solution.feasible)
                entry["residual_m"] = _sanitize(max(step.solution.residuals))
            steps.append(entry)
        doc["steps"] = steps
        doc["cumulative"] = {
            "total_duration_s": source.total_duration_s,
            "time_weighted_reba": _sanitize(source.time_weighted_reba),
            "composite_li": _sanitize(source.composite_li),
        }
        doc["warnings"] = list(source.warnings)
        return doc

    results = source if isinstance(source, (list, tuple)) else [source]
    if not results:
        raise AssessmentError("cannot export an empty result set")
    step: dict[str, Any] = {"index": 0, "results": [_result_entry(r) for r in results]}
    if posture_q is not None:
        step["posture_q"] = _sanitize(posture_q)
    doc["steps"] = [step]
    return doc


def validate_report(doc: dict) -> None:
    schema = json.loads(schema_path("report_schema.json").read_text())
    jsonschema.validate(doc, schema)


def export_report(
    source,
    format: str = "json",
    model: Optional[HumanModel] = None,
    posture_q=None,
) -> str:
    """Render a report document; JSON is canonical, CSV is derived from it."""
    doc = build_report(source, model=model, posture_q=posture_q)
    validate_report(doc)
    if format == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if format == "csv":
        return _to_csv(doc)
    raise AssessmentError(f"unknown report format {format!r} (json|csv)")


def _to_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for step in doc["steps"]:
        for res in step["results"]:
            row = {
                "step": step["index"],
                "action": step.get("action", ""),
                "duration_s": step.get("duration_s", ""),
                "feasible": step.get("feasible", ""),
            }
            if "error" in res:
                row.update(method=res["method"], error=res["error"],
                           grand_score="", level="", level_label="")
            else:
                row.update(
                    method=res["method"],
                    grand_score=res["grand_score"],
                    level=res["level"],
                    level_label=res["level_label"],
                    error="",
                )
            writer.writerow(row)
    return buf.getvalue()
