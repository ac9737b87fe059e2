"""OWAS: posture classification into four action categories.

Back/arm/leg codes are derived from the extracted angles and support type;
the static model cannot observe walking or kneeling, so those leg codes are
reachable only through explicit context flags. Load class is user-supplied.
"""

from __future__ import annotations

from functools import lru_cache

from openj.assess.base import AssessmentResult, ContextField, ErgonomicAssessment
from openj.assess.state import PostureState
from openj.data import load_table

CATEGORIES = {
    1: "normal posture, no action required",
    2: "slightly harmful, corrective action in the near future",
    3: "distinctly harmful, corrective action as soon as possible",
    4: "extremely harmful, corrective action immediately",
}

_EPS = 1e-9  # boundary angles snap to the higher-risk code
BACK_BEND_DEG = 20.0
BACK_TWIST_DEG = 20.0
ARM_ABOVE_SHOULDER_DEG = 90.0
KNEE_BENT_DEG = 30.0


@lru_cache(maxsize=1)
def _category_table():
    table = {}
    for row in load_table("owas_categories.csv"):
        key = (int(row["back"]), int(row["arms"]), int(row["legs"]), int(row["load"]))
        table[key] = int(row["category"])
    return table


def back_code(flexion: float, side: float, twist: float) -> int:
    bent = flexion >= BACK_BEND_DEG - _EPS
    twisted = (abs(twist) >= BACK_TWIST_DEG - _EPS
               or abs(side) >= BACK_TWIST_DEG - _EPS)
    if bent and twisted:
        return 4
    if twisted:
        return 3
    if bent:
        return 2
    return 1


def arms_code(elev_l: float, elev_r: float) -> int:
    above = (int(elev_l >= ARM_ABOVE_SHOULDER_DEG - _EPS)
             + int(elev_r >= ARM_ABOVE_SHOULDER_DEG - _EPS))
    return 1 if above == 0 else (2 if above == 1 else 3)


def legs_code(state: PostureState) -> int:
    ctx = state.context
    if state.support == "sitting":
        return 1
    if bool(ctx.get("walking", False)):
        return 7
    if bool(ctx.get("kneeling", False)):
        return 6
    ang = state.angles
    bent_l = ang.knee_flexion_l >= KNEE_BENT_DEG - _EPS
    bent_r = ang.knee_flexion_r >= KNEE_BENT_DEG - _EPS
    if bool(ctx.get("single_leg_stance", False)):
        return 5 if (bent_l or bent_r) else 3
    if bent_l and bent_r:
        return 4
    if bent_l or bent_r:
        return 5
    return 2


class OwasAssessment(ErgonomicAssessment):
    id = "owas"
    automation_level = "PARTIAL"
    required_context_fields = (
        ContextField("load_class", "number", unit="1: <=10 kg, 2: <=20 kg, 3: >20 kg"),
    )

    def assess(self, state: PostureState) -> AssessmentResult:
        ang = state.angles
        load = int(state.context["load_class"])
        if load not in (1, 2, 3):
            from openj.assess.base import AssessmentError

            raise AssessmentError(f"load_class must be 1, 2 or 3, got {load}")
        back = back_code(ang.trunk_flexion, ang.trunk_side_bend, ang.trunk_twist)
        arms = arms_code(ang.upper_arm_elevation_l, ang.upper_arm_elevation_r)
        legs = legs_code(state)
        category = _category_table()[(back, arms, legs, load)]
        return AssessmentResult(
            method=self.id,
            grand_score=float(category),
            level=(category, CATEGORIES[category]),
            subscores={"back": back, "arms": arms, "legs": legs, "load": load},
            consumed_context=tuple(
                k for k in ("load_class", "walking", "kneeling", "single_leg_stance")
                if k in state.context
            ),
            automation=self.automation_level,
        )
