"""Multi-task lifting: single-task metrics and the composite lifting index.

Per the multi-task procedure of the revised lifting equation's follow-on
publication (Waters et al. 1994): subtasks are ordered by single-task LI
descending and CLI = STLI_1 + sum_i FILI_i * (1/FM(F_1+..+F_i) -
1/FM(F_1+..+F_{i-1})), with FILI built on the frequency-independent RWL.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from openj.assess.base import AssessmentError
from openj.assess.niosh import frequency_multiplier, recommended_weight_limit


@dataclass(frozen=True)
class SingleTaskAnalysis:
    load_kg: float
    f_per_min: float
    v_cm: float
    duration_class: str
    firwl: float  # frequency-independent RWL (FM = 1)
    fili: float  # load / FIRWL
    strwl: float  # FIRWL * FM
    stli: float  # load / STRWL


def single_task_analysis(context: dict) -> SingleTaskAnalysis:
    """FIRWL/FILI/STRWL/STLI for one lifting subtask context."""
    required = ("h_cm", "v_cm", "d_cm", "a_deg", "f_per_min", "coupling", "load_kg")
    missing = [k for k in required if k not in context]
    if missing:
        raise AssessmentError(f"lifting subtask missing fields: {missing}")
    duration = str(context.get("duration_class", "1h"))
    rwl, mult = recommended_weight_limit(
        float(context["h_cm"]),
        float(context["v_cm"]),
        float(context["d_cm"]),
        float(context["a_deg"]),
        float(context["f_per_min"]),
        str(context["coupling"]),
        duration,
    )
    load = float(context["load_kg"])
    fm = mult["fm"]
    firwl = rwl / fm if fm > 0 else 23.0 * mult["hm"] * mult["vm"] * mult["dm"] * mult["am"] * mult["cm"]
    fili = load / firwl if firwl > 0 else math.inf
    strwl = firwl * fm
    stli = load / strwl if strwl > 0 else math.inf
    return SingleTaskAnalysis(
        load_kg=load,
        f_per_min=float(context["f_per_min"]),
        v_cm=float(context["v_cm"]),
        duration_class=duration,
        firwl=firwl,
        fili=fili,
        strwl=strwl,
        stli=stli,
    )


def composite_lifting_index(subtasks: list[dict]) -> float:
    """CLI over >= 1 lifting subtasks (order-insensitive; sorts internally)."""
    if not subtasks:
        raise AssessmentError("composite lifting index needs at least one subtask")
    analyses = []
    for i, ctx in enumerate(subtasks):
        try:
            analyses.append(single_task_analysis(ctx))
        except AssessmentError as exc:
            raise AssessmentError(f"subtask {i}: {exc}") from exc

    analyses.sort(key=lambda a: a.stli, reverse=True)
    cli = analyses[0].stli
    if not math.isfinite(cli):
        return cli
    cum_freq = analyses[0].f_per_min
    for a in analyses[1:]:
        prev_fm = frequency_multiplier(cum_freq, a.duration_class, a.v_cm)
        cum_freq += a.f_per_min
        next_fm = frequency_multiplier(cum_freq, a.duration_class, a.v_cm)
        if next_fm <= 0.0 or prev_fm <= 0.0:
            return math.inf
        cli += a.fili * (1.0 / next_fm - 1.0 / prev_fm)
    return cli
