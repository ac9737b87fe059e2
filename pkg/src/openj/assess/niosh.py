"""Revised lifting equation: RWL = LC * HM * VM * DM * AM * FM * CM, LI = load/RWL.

The six task variables (H, V, D, A, F, coupling) are required context; the
frequency multiplier uses the published discrete table with the nearest
lower frequency row, and each multiplier clamps to [0, 1] with out-of-range
inputs zeroing it per the publication. `load_kg` defaults to 0 (LI = 0) and
`duration_class` to '1h'; both are documented optional inputs.
"""

from __future__ import annotations

import math
from functools import lru_cache

from openj.assess.base import (
    AssessmentError,
    AssessmentResult,
    ContextField,
    ErgonomicAssessment,
)
from openj.assess.state import PostureState
from openj.data import load_table

LOAD_CONSTANT_KG = 23.0
DURATION_CLASSES = ("1h", "2h", "8h")
INFINITE_LI = math.inf

LEVELS = {
    1: "nominal risk (LI <= 1)",
    2: "increased risk (1 < LI <= 2)",
    3: "high risk (2 < LI <= 3)",
    4: "very high risk (LI > 3)",
}


@lru_cache(maxsize=1)
def _fm_table():
    rows = []
    for row in load_table("niosh_fm.csv"):
        rows.append(
            (
                float(row["freq_per_min"]),
                row["duration"],
                float(row["v_below_75"]),
                float(row["v_at_or_above_75"]),
            )
        )
    return rows


@lru_cache(maxsize=1)
def _cm_table():
    return {
        row["coupling"]: (float(row["v_below_75"]), float(row["v_at_or_above_75"]))
        for row in load_table("niosh_cm.csv")
    }


def horizontal_multiplier(h_cm: float) -> float:
    if h_cm <= 25.0:
        return 1.0
    if h_cm > 63.0:
        return 0.0
    return 25.0 / h_cm


def vertical_multiplier(v_cm: float) -> float:
    if v_cm < 0.0 or v_cm > 175.0:
        return 0.0
    return 1.0 - 0.003 * abs(v_cm - 75.0)


def distance_multiplier(d_cm: float) -> float:
    if d_cm <= 25.0:
        return 1.0
    if d_cm > 175.0:
        return 0.0
    return 0.82 + 4.5 / d_cm


def asymmetry_multiplier(a_deg: float) -> float:
    if a_deg < 0.0 or a_deg > 135.0:
        return 0.0
    return 1.0 - 0.0032 * a_deg


def frequency_multiplier(f_per_min: float, duration_class: str, v_cm: float) -> float:
    if duration_class not in DURATION_CLASSES:
        raise AssessmentError(
            f"duration_class must be one of {DURATION_CLASSES}, got {duration_class!r}"
        )
    if f_per_min < 0.0:
        raise AssessmentError(f"f_per_min must be >= 0, got {f_per_min}")
    if f_per_min > 15.0:
        return 0.0
    rows = sorted((r for r in _fm_table() if r[1] == duration_class), key=lambda r: r[0])
    best = rows[0]
    for row in rows:
        if row[0] <= max(f_per_min, rows[0][0]):
            best = row
    return best[2] if v_cm < 75.0 else best[3]


def coupling_multiplier(coupling: str, v_cm: float) -> float:
    table = _cm_table()
    if coupling not in table:
        raise AssessmentError(
            f"coupling must be one of {sorted(table)}, got {coupling!r}"
        )
    lo, hi = table[coupling]
    return lo if v_cm < 75.0 else hi


def recommended_weight_limit(
    h_cm: float, v_cm: float, d_cm: float, a_deg: float,
    f_per_min: float, coupling: str, duration_class: str = "1h",
) -> tuple[float, dict[str, float]]:
    multipliers = {
        "hm": horizontal_multiplier(h_cm),
        "vm": vertical_multiplier(v_cm),
        "dm": distance_multiplier(d_cm),
        "am": asymmetry_multiplier(a_deg),
        "fm": frequency_multiplier(f_per_min, duration_class, v_cm),
        "cm": coupling_multiplier(coupling, v_cm),
    }
    rwl = LOAD_CONSTANT_KG
    for v in multipliers.values():
        rwl *= v
    return rwl, multipliers


class NioshAssessment(ErgonomicAssessment):
    id = "niosh"
    automation_level = "PARTIAL"
    required_context_fields = (
        ContextField("h_cm", "number", unit="cm",
                     description="horizontal hand distance from mid-ankles"),
        ContextField("v_cm", "number", unit="cm", description="hand height at origin"),
        ContextField("d_cm", "number", unit="cm", description="vertical travel distance"),
        ContextField("a_deg", "number", unit="deg", description="asymmetry angle"),
        ContextField("f_per_min", "number", unit="lifts/min"),
        ContextField("coupling", "choice", choices=("good", "fair", "poor")),
    )

    def assess(self, state: PostureState) -> AssessmentResult:
        ctx = state.context
        duration = str(ctx.get("duration_class", "1h"))
        load = float(ctx.get("load_kg", 0.0))
        rwl, multipliers = recommended_weight_limit(
            float(ctx["h_cm"]), float(ctx["v_cm"]), float(ctx["d_cm"]),
            float(ctx["a_deg"]), float(ctx["f_per_min"]), str(ctx["coupling"]),
            duration,
        )
        if rwl > 0.0:
            li = load / rwl
        else:
            li = INFINITE_LI if load > 0.0 else 0.0
        level = (
            1 if li <= 1.0 else
            2 if li <= 2.0 else
            3 if li <= 3.0 else
            4
        )
        label = LEVELS[level] if math.isfinite(li) else "beyond equation range (RWL = 0)"
        return AssessmentResult(
            method=self.id,
            grand_score=li,
            level=(level, label),
            subscores={**multipliers, "rwl_kg": rwl, "load_kg": load, "li": li,
                       "duration_class": duration},
            consumed_context=tuple(
                k for k in ("h_cm", "v_cm", "d_cm", "a_deg", "f_per_min", "coupling",
                            "duration_class", "load_kg")
                if k in ctx
            ),
            automation=self.automation_level,
        )
