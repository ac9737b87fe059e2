"""Psychophysical acceptable-demand check against the bundled table subset.

The shipped grid covers lift and carry for both sexes at the 75th
accommodation percentile, on a (frequency x distance) grid with bilinear
interpolation. Queries outside the grid hull raise an explicit
out-of-table error: no extrapolation.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from openj.assess.base import (
    AssessmentError,
    AssessmentResult,
    ContextField,
    ErgonomicAssessment,
)
from openj.assess.state import PostureState
from openj.data import load_table

DEFAULT_PERCENTILE = 75

# distance axis semantics per action, documented for context authors
DISTANCE_UNITS = {"lift": "vertical lift distance cm", "carry": "carry distance m"}


@lru_cache(maxsize=1)
def _grids():
    """(action, sex, percentile) -> (freq axis, distance axis, limits[f, d])."""
    raw: dict[tuple, dict] = {}
    for row in load_table("snook.csv"):
        key = (row["action"], row["sex"], int(row["percentile"]))
        raw.setdefault(key, {})[
            (float(row["frequency_per_min"]), float(row["distance"]))
        ] = float(row["limit_kg"])
    grids = {}
    for key, cells in raw.items():
        freqs = sorted({f for f, _ in cells})
        dists = sorted({d for _, d in cells})
        table = np.array([[cells[(f, d)] for d in dists] for f in freqs])
        grids[key] = (np.array(freqs), np.array(dists), table)
    return grids


def _interp_axis(axis: np.ndarray, value: float, what: str) -> tuple[int, float]:
    if value < axis[0] or value > axis[-1]:
        raise AssessmentError(
            f"{what} {value:g} is outside the shipped table grid "
            f"[{axis[0]:g}, {axis[-1]:g}]; no extrapolation"
        )
    idx = int(np.searchsorted(axis, value, side="right") - 1)
    if idx >= len(axis) - 1:
        return len(axis) - 2, 1.0
    t = (value - axis[idx]) / (axis[idx + 1] - axis[idx])
    return idx, float(t)


def acceptable_limit(
    action: str, sex: str, frequency_per_min: float, distance: float,
    percentile: int = DEFAULT_PERCENTILE,
) -> float:
    """Maximum acceptable demand (kg) by bilinear grid interpolation."""
    grids = _grids()
    key = (action, sex, percentile)
    if key not in grids:
        available = sorted({(a, s, p) for a, s, p in grids})
        raise AssessmentError(
            f"no shipped table for action={action!r}, sex={sex!r}, "
            f"percentile={percentile}; shipped: {available}"
        )
    freqs, dists, table = grids[key]
    fi, ft = _interp_axis(freqs, frequency_per_min, "frequency (per min)")
    di, dt = _interp_axis(dists, distance, "distance")
    v00 = table[fi, di]
    v01 = table[fi, di + 1]
    v10 = table[fi + 1, di]
    v11 = table[fi + 1, di + 1]
    return float(
        v00 * (1 - ft) * (1 - dt)
        + v10 * ft * (1 - dt)
        + v01 * (1 - ft) * dt
        + v11 * ft * dt
    )


class SnookAssessment(ErgonomicAssessment):
    id = "snook"
    automation_level = "PARTIAL"
    required_context_fields = (
        ContextField("action", "choice", choices=("lift", "carry"),
                     description="shipped table subset; see data pack docs"),
        ContextField("sex", "choice", choices=("male", "female")),
        ContextField("frequency_per_min", "number", unit="actions/min"),
        ContextField("distance", "number",
                     unit="cm (lift vertical) / m (carry)"),
        ContextField("demand_kg", "number", unit="kg"),
    )

    def assess(self, state: PostureState) -> AssessmentResult:
        ctx = state.context
        percentile = int(ctx.get("population_percentile", DEFAULT_PERCENTILE))
        limit = acceptable_limit(
            str(ctx["action"]), str(ctx["sex"]), float(ctx["frequency_per_min"]),
            float(ctx["distance"]), percentile,
        )
        demand = float(ctx["demand_kg"])
        acceptable = demand <= limit
        ratio = demand / limit if limit > 0 else float("inf")
        note = (
            f"demand within the P{percentile} acceptable limit"
            if acceptable
            else f"demand exceeds the P{percentile} acceptable limit"
        )
        return AssessmentResult(
            method=self.id,
            grand_score=ratio,
            level=(1, "acceptable") if acceptable else (2, "exceeds limit"),
            subscores={
                "limit_kg": limit,
                "demand_kg": demand,
                "acceptable": acceptable,
                "percentile": percentile,
                "accommodation_note": note,
            },
            consumed_context=tuple(
                k for k in ("action", "sex", "frequency_per_min", "distance",
                            "demand_kg", "population_percentile")
                if k in ctx
            ),
            automation=self.automation_level,
        )
