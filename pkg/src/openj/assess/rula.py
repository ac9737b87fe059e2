"""RULA: rapid upper limb assessment (grand score 1-7, four action levels).

Posture scores are derived from the extracted anatomical angles using the
worksheet's degree bands; boundary values fall into the higher-risk band.
Wrist twist range and muscle/force data cannot be inferred from the 41-DOF
posture and are user-supplied context.
"""

from __future__ import annotations

from functools import lru_cache

from openj.assess.base import (
    AssessmentResult,
    ContextField,
    ErgonomicAssessment,
)
from openj.assess.state import PostureState
from openj.data import load_table

_EPS = 1e-9  # FK-derived angles sit within ~1e-12 of exact boundaries

ACTION_LEVELS = {
    1: "acceptable posture",
    2: "further investigation, change may be needed",
    3: "investigation and changes required soon",
    4: "investigation and changes required immediately",
}


@lru_cache(maxsize=1)
def _tables():
    a = {}
    for row in load_table("rula_table_a.csv"):
        key = (int(row["upper_arm"]), int(row["lower_arm"]), int(row["wrist"]),
               int(row["wrist_twist"]))
        a[key] = int(row["score"])
    b = {}
    for row in load_table("rula_table_b.csv"):
        b[(int(row["neck"]), int(row["trunk"]), int(row["legs"]))] = int(row["score"])
    c = {}
    for row in load_table("rula_table_c.csv"):
        c[(int(row["score_c"]), int(row["score_d"]))] = int(row["grand"])
    return a, b, c


def upper_arm_score(elevation: float, raised: bool, abducted: bool, supported: bool) -> int:
    e = elevation
    if e < -20.0 + _EPS:
        score = 2
    elif e < 20.0 - _EPS:
        score = 1
    elif e < 45.0 - _EPS:
        score = 2
    elif e < 90.0 - _EPS:
        score = 3
    else:
        score = 4
    score += int(raised) + int(abducted) - int(supported)
    return max(1, min(score, 6))


def lower_arm_score(flexion: float, across_midline: bool) -> int:
    score = 1 if 60.0 - _EPS <= flexion < 100.0 - _EPS else 2
    return min(score + int(across_midline), 3)


def wrist_score(flexion: float, deviation: float) -> int:
    w = abs(flexion)
    if w < 1.0:
        score = 1
    elif w < 15.0 - _EPS:
        score = 2
    else:
        score = 3
    if abs(deviation) >= 10.0 - _EPS:
        score += 1
    return min(score, 4)


def neck_score(flexion: float, side: float, twist: float) -> int:
    if flexion < -_EPS:
        score = 4
    elif flexion < 10.0 - _EPS:
        score = 1
    elif flexion < 20.0 - _EPS:
        score = 2
    else:
        score = 3
    score += int(abs(twist) >= 10.0 - _EPS) + int(abs(side) >= 10.0 - _EPS)
    return min(score, 6)


def trunk_score(flexion: float, side: float, twist: float, sitting_supported: bool) -> int:
    t = flexion
    if sitting_supported and t < 20.0 - _EPS:
        score = 1
    elif abs(t) < 3.0:
        score = 1
    elif t < 0.0:
        score = max(2, 2 if -t < 20.0 - _EPS else (3 if -t < 60.0 - _EPS else 4))
    elif t < 20.0 - _EPS:
        score = 2
    elif t < 60.0 - _EPS:
        score = 3
    else:
        score = 4
    score += int(abs(twist) >= 10.0 - _EPS) + int(abs(side) >= 10.0 - _EPS)
    return min(score, 6)


def muscle_use_score(static: bool, repeated: bool) -> int:
    return 1 if (static or repeated) else 0


def force_score(load_kg: float, static_or_repeated: bool, shock: bool) -> int:
    if shock or (load_kg >= 10.0 - _EPS and static_or_repeated):
        return 3
    if load_kg >= 10.0 - _EPS or (load_kg >= 2.0 - _EPS and static_or_repeated):
        return 2
    if load_kg >= 2.0 - _EPS:
        return 1
    return 0


class RulaAssessment(ErgonomicAssessment):
    id = "rula"
    automation_level = "PARTIAL"
    required_context_fields = (
        ContextField("muscle_use_static", "flag",
                     description="posture held static for more than a minute"),
        ContextField("force_load_kg", "number", unit="kg"),
        ContextField("wrist_twist_range", "choice", choices=("mid", "end"),
                     description="forearm twist posture (no hand DOF in the model)"),
    )

    def assess(self, state: PostureState) -> AssessmentResult:
        table_a, table_b, table_c = _tables()
        ctx = state.context
        ang = state.angles

        side = ctx.get("side", "worst")
        sides = ("l", "r") if side == "worst" else (side,)
        per_side = {}
        for s in sides:
            ua = upper_arm_score(
                ang.side("upper_arm_elevation", s),
                bool(ctx.get("shoulder_raised", ang.side("shoulder_raised", s))),
                ang.side("upper_arm_abducted", s),
                bool(ctx.get("arm_supported", False)),
            )
            la = lower_arm_score(
                ang.side("elbow_flexion", s), bool(ctx.get("arm_across_midline", False))
            )
            wr = wrist_score(ang.side("wrist_flexion", s), ang.side("wrist_deviation", s))
            twist = 1 if ctx["wrist_twist_range"] == "mid" else 2
            per_side[s] = (ua, la, wr, twist, table_a[(ua, la, wr, twist)])

        use_side = max(per_side, key=lambda s: per_side[s][4])
        ua, la, wr, twist, a_score = per_side[use_side]

        muscle = muscle_use_score(
            bool(ctx["muscle_use_static"]), bool(ctx.get("muscle_use_repeated", False))
        )
        force = force_score(
            float(ctx["force_load_kg"]),
            bool(ctx.get("force_static", False)),
            bool(ctx.get("force_shock", False)),
        )

        neck = neck_score(ang.neck_flexion, ang.neck_side_bend, ang.neck_twist)
        trunk = trunk_score(
            ang.trunk_flexion, ang.trunk_side_bend, ang.trunk_twist,
            state.support == "sitting",
        )
        legs = 1 if bool(ctx.get("legs_supported", True)) else 2
        b_score = table_b[(neck, trunk, legs)]

        score_c = min(a_score + muscle + force, 8)
        score_d = min(b_score + muscle + force, 7)
        grand = table_c[(score_c, score_d)]
        level = 1 if grand <= 2 else 2 if grand <= 4 else 3 if grand <= 6 else 4

        return AssessmentResult(
            method=self.id,
            grand_score=float(grand),
            level=(level, ACTION_LEVELS[level]),
            subscores={
                "side": use_side,
                "upper_arm": ua,
                "lower_arm": la,
                "wrist": wr,
                "wrist_twist": twist,
                "table_a": a_score,
                "neck": neck,
                "trunk": trunk,
                "legs": legs,
                "table_b": b_score,
                "muscle_use": muscle,
                "force_load": force,
                "score_c": score_c,
                "score_d": score_d,
            },
            consumed_context=tuple(
                k for k in ("muscle_use_static", "force_load_kg", "wrist_twist_range",
                            "side", "shoulder_raised", "arm_supported",
                            "arm_across_midline", "muscle_use_repeated",
                            "force_static", "force_shock", "legs_supported")
                if k in ctx
            ),
            automation=self.automation_level,
        )
