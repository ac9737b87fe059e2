"""REBA: rapid entire body assessment (grand score 1-15, five risk levels).

Coupling quality and activity flags are user-supplied context; degree bands
follow the published worksheet with boundaries in the higher-risk band.
"""

from __future__ import annotations

from functools import lru_cache

from openj.assess.base import AssessmentResult, ContextField, ErgonomicAssessment
from openj.assess.state import PostureState
from openj.data import load_table

_EPS = 1e-9  # FK-derived angles sit within ~1e-12 of exact boundaries

RISK_LEVELS = {
    0: "negligible risk",
    1: "low risk, change may be needed",
    2: "medium risk, investigate further and change soon",
    3: "high risk, investigate and implement change",
    4: "very high risk, implement change now",
}

COUPLING_SCORES = {"good": 0, "fair": 1, "poor": 2, "unacceptable": 3}


@lru_cache(maxsize=1)
def _tables():
    a = {}
    for row in load_table("reba_table_a.csv"):
        a[(int(row["trunk"]), int(row["neck"]), int(row["legs"]))] = int(row["score"])
    b = {}
    for row in load_table("reba_table_b.csv"):
        b[(int(row["upper_arm"]), int(row["lower_arm"]), int(row["wrist"]))] = int(row["score"])
    c = {}
    for row in load_table("reba_table_c.csv"):
        c[(int(row["score_a"]), int(row["score_b"]))] = int(row["score"])
    return a, b, c


def trunk_score(flexion: float, side: float, twist: float) -> int:
    t = flexion
    if abs(t) < 3.0:
        score = 1
    elif t < 0.0:
        score = 2 if -t < 20.0 - _EPS else 3
    elif t < 20.0 - _EPS:
        score = 2
    elif t < 60.0 - _EPS:
        score = 3
    else:
        score = 4
    if abs(twist) >= 10.0 - _EPS or abs(side) >= 10.0 - _EPS:
        score += 1
    return min(score, 5)


def neck_score(flexion: float, side: float, twist: float) -> int:
    score = 1 if -_EPS <= flexion < 20.0 - _EPS else 2
    if abs(twist) >= 10.0 - _EPS or abs(side) >= 10.0 - _EPS:
        score += 1
    return min(score, 3)


def legs_score(state: PostureState) -> int:
    ctx = state.context
    ang = state.angles
    walking = bool(ctx.get("walking", False))
    unilateral = bool(ctx.get("single_leg_stance", False)) or bool(
        ctx.get("unstable_base", False)
    )
    score = 2 if unilateral else 1
    if state.support == "standing" and not walking:
        knee = max(ang.knee_flexion_l, ang.knee_flexion_r)
        if knee >= 60.0 - _EPS:
            score += 2
        elif knee >= 30.0 - _EPS:
            score += 1
    return min(score, 4)


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


def lower_arm_score(flexion: float) -> int:
    return 1 if 60.0 - _EPS <= flexion < 100.0 - _EPS else 2


def wrist_score(flexion: float, deviation: float, twisted: bool) -> int:
    score = 1 if abs(flexion) < 15.0 - _EPS else 2
    if abs(deviation) >= 10.0 - _EPS or twisted:
        score += 1
    return min(score, 3)


def load_score(load_kg: float, shock: bool) -> int:
    score = 0 if load_kg < 5.0 - _EPS else (1 if load_kg < 10.0 - _EPS else 2)
    return score + int(shock)


class RebaAssessment(ErgonomicAssessment):
    id = "reba"
    automation_level = "PARTIAL"
    required_context_fields = (
        ContextField("load_kg", "number", unit="kg"),
        ContextField("coupling", "choice",
                     choices=("good", "fair", "poor", "unacceptable")),
        ContextField("activity_static", "flag",
                     description="body part held static for more than a minute"),
        ContextField("activity_repeated", "flag",
                     description="small-range action repeated more than 4x/min"),
        ContextField("activity_rapid_change", "flag",
                     description="rapid large range changes or unstable base"),
    )

    def assess(self, state: PostureState) -> AssessmentResult:
        table_a, table_b, table_c = _tables()
        ctx = state.context
        ang = state.angles

        trunk = trunk_score(ang.trunk_flexion, ang.trunk_side_bend, ang.trunk_twist)
        neck = neck_score(ang.neck_flexion, ang.neck_side_bend, ang.neck_twist)
        legs = legs_score(state)
        load = load_score(float(ctx["load_kg"]), bool(ctx.get("load_shock", False)))
        score_a = table_a[(trunk, neck, legs)] + load

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
            la = lower_arm_score(ang.side("elbow_flexion", s))
            wr = wrist_score(
                ang.side("wrist_flexion", s),
                ang.side("wrist_deviation", s),
                bool(ctx.get("wrist_twisted", False)),
            )
            per_side[s] = (ua, la, wr, table_b[(ua, la, wr)])
        use_side = max(per_side, key=lambda s: per_side[s][3])
        ua, la, wr, b_base = per_side[use_side]
        coupling = COUPLING_SCORES[ctx["coupling"]]
        score_b = b_base + coupling

        score_c = table_c[(min(score_a, 12), min(score_b, 12))]
        activity = (
            int(bool(ctx["activity_static"]))
            + int(bool(ctx["activity_repeated"]))
            + int(bool(ctx["activity_rapid_change"]))
        )
        grand = min(score_c + activity, 15)
        level = (
            0 if grand == 1 else
            1 if grand <= 3 else
            2 if grand <= 7 else
            3 if grand <= 10 else
            4
        )

        return AssessmentResult(
            method=self.id,
            grand_score=float(grand),
            level=(level, RISK_LEVELS[level]),
            subscores={
                "side": use_side,
                "trunk": trunk,
                "neck": neck,
                "legs": legs,
                "load": load,
                "score_a": score_a,
                "upper_arm": ua,
                "lower_arm": la,
                "wrist": wr,
                "coupling": coupling,
                "score_b": score_b,
                "score_c": score_c,
                "activity": activity,
            },
            consumed_context=tuple(
                k for k in ("load_kg", "coupling", "activity_static",
                            "activity_repeated", "activity_rapid_change", "side",
                            "load_shock", "shoulder_raised", "arm_supported",
                            "wrist_twisted", "walking", "single_leg_stance",
                            "unstable_base")
                if k in ctx
            ),
            automation=self.automation_level,
        )
