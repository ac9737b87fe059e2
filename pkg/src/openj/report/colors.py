"""Score-to-color mapping: green (0) through yellow (0.5) to red (1)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from openj.assess.base import AssessmentError, AssessmentResult


@dataclass(frozen=True)
class RiskColor:
    normalized_risk: float
    rgb: tuple[int, int, int]


def _gradient(risk: float) -> tuple[int, int, int]:
    r = min(max(risk, 0.0), 1.0)
    if r <= 0.5:
        return (round(510 * r), 255, 0)
    return (255, round(510 * (1.0 - r)), 0)


_RANGES = {
    "rula": (1.0, 7.0),
    "reba": (1.0, 15.0),
    "owas": (1.0, 4.0),
}


def normalized_risk(method: str, grand_score: float) -> float:
    if method in _RANGES:
        lo, hi = _RANGES[method]
        if not (lo <= grand_score <= hi):
            raise AssessmentError(
                f"{method} grand score {grand_score} outside [{lo:g}, {hi:g}]"
            )
        return (grand_score - lo) / (hi - lo)
    if method == "niosh":
        if grand_score < 0:
            raise AssessmentError(f"lifting index must be >= 0, got {grand_score}")
        if not math.isfinite(grand_score):
            return 1.0
        return min(grand_score, 2.0) / 2.0
    if method == "snook":
        # acceptable (demand within limit) -> 0, exceeded -> 1
        if grand_score < 0:
            raise AssessmentError(f"demand ratio must be >= 0, got {grand_score}")
        return 0.0 if grand_score <= 1.0 else 1.0
    raise AssessmentError(f"unknown method {method!r} for risk normalization")


def risk_color(method: str, grand_score: float) -> RiskColor:
    risk = normalized_risk(method, grand_score)
    return RiskColor(normalized_risk=risk, rgb=_gradient(risk))


# subscore -> (segment bases it colors, published subscore range)
_SEGMENT_SUBSCORES = {
    "rula": {
        "upper_arm": (("upper_arm",), (1, 6)),
        "lower_arm": (("forearm",), (1, 3)),
        "wrist": (("hand",), (1, 4)),
        "neck": (("neck", "head"), (1, 6)),
        "trunk": (("thorax", "lumbar", "pelvis"), (1, 6)),
        "legs": (("thigh", "shank", "foot"), (1, 2)),
    },
    "reba": {
        "upper_arm": (("upper_arm",), (1, 6)),
        "lower_arm": (("forearm",), (1, 2)),
        "wrist": (("hand",), (1, 3)),
        "neck": (("neck", "head"), (1, 3)),
        "trunk": (("thorax", "lumbar", "pelvis"), (1, 5)),
        "legs": (("thigh", "shank", "foot"), (1, 4)),
    },
    "owas": {
        "back": (("thorax", "lumbar", "pelvis"), (1, 4)),
        "arms": (("upper_arm", "forearm", "hand"), (1, 3)),
        "legs": (("thigh", "shank", "foot"), (1, 7)),
    },
}

_ALL_BASES = (
    "pelvis", "lumbar", "thorax", "neck", "head", "upper_arm", "forearm",
    "hand", "thigh", "shank", "foot",
)


def segment_risk_colors(result: AssessmentResult) -> dict[str, RiskColor]:
    """Per-segment-base colors. Methods with posture subscores color regions
    individually; the rest tint the whole body by the grand score."""
    overall = risk_color(result.method, result.grand_score)
    colors = {base: overall for base in _ALL_BASES}
    mapping = _SEGMENT_SUBSCORES.get(result.method)
    if mapping:
        for key, (bases, (lo, hi)) in mapping.items():
            value = result.subscores.get(key)
            if value is None:
                continue
            risk = (min(max(float(value), lo), hi) - lo) / (hi - lo)
            color = RiskColor(normalized_risk=risk, rgb=_gradient(risk))
            for base in bases:
                colors[base] = color
    return colors
