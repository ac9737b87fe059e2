"""Posture-code classification cases against the transcribed category chart."""

import math

import pytest

from openj.assess import AssessmentError, PostureState, run_assessments
from openj.data import load_table

DEG = math.pi / 180.0


def state_for(model, support="standing", context=None, **joint_degrees):
    q = model.q_neutral
    for name, deg in joint_degrees.items():
        q[model.joint_index(name)] = deg * DEG
    ctx = {"load_class": 1}
    ctx.update(context or {})
    return PostureState.from_posture(model, q, support, ctx)


def owas(model, **kwargs):
    return run_assessments(state_for(model, **kwargs), ["owas"])[0]


class TestWorkedPostures:
    def test_case1_upright_standing(self, model):
        # codes (back 1, arms 1, legs 2, load 1) -> category 1
        r = owas(model)
        assert r.subscores == {"back": 1, "arms": 1, "legs": 2, "load": 1}
        assert r.grand_score == 1

    def test_case2_worst_corner(self, model):
        # bent+twisted back (4), both arms above shoulder (3), squat (4),
        # load 3 -> category 4
        r = owas(
            model,
            lumbar_flexion=20, thoracic_flexion=10, lumbar_twist=15,
            thoracic_twist=10,
            shoulder_l_flexion=95, shoulder_r_flexion=95,
            knee_l_flexion=60, knee_r_flexion=60,
            context={"load_class": 3},
        )
        assert r.subscores == {"back": 4, "arms": 3, "legs": 4, "load": 3}
        assert r.grand_score == 4

    def test_case3_bent_back_medium_load(self, model):
        # back bent (2), arms below (1), standing straight (2), load 2 -> 2
        r = owas(model, lumbar_flexion=15, thoracic_flexion=10,
                 context={"load_class": 2})
        assert r.subscores["back"] == 2
        assert r.grand_score == 2

    def test_case4_twisted_sitting_one_arm_up(self, model):
        # twisted back (3), one arm above (2), sitting (1), load 1 -> 2
        r = owas(model, support="sitting", lumbar_twist=15, thoracic_twist=10,
                 shoulder_l_flexion=95)
        assert r.subscores == {"back": 3, "arms": 2, "legs": 1, "load": 1}
        assert r.grand_score == 2

    def test_case5_kneeling_arm_up(self, model):
        # straight back, one arm above (2), kneeling (6), load 2 -> 1
        r = owas(model, shoulder_r_flexion=95,
                 context={"kneeling": True, "load_class": 2})
        assert r.subscores == {"back": 1, "arms": 2, "legs": 6, "load": 2}
        assert r.grand_score == 1

    def test_case6_bent_one_knee_heavy(self, model):
        # bent back (2), arms below (1), one bent knee (5), load 3 -> 4
        r = owas(model, lumbar_flexion=20, thoracic_flexion=15,
                 knee_l_flexion=40, context={"load_class": 3})
        assert r.subscores == {"back": 2, "arms": 1, "legs": 5, "load": 3}
        assert r.grand_score == 4


class TestMechanics:
    def test_walking_via_context_flag_only(self, model):
        r = owas(model, context={"walking": True})
        assert r.subscores["legs"] == 7

    def test_invalid_load_class(self, model):
        from openj.assess import MethodFailure

        result = run_assessments(state_for(model, context={"load_class": 9}),
                                 ["owas"])[0]
        assert isinstance(result, MethodFailure)

    def test_category_monotone_in_load_over_whole_chart(self):
        rows = load_table("owas_categories.csv")
        cells = {}
        for row in rows:
            key = (int(row["back"]), int(row["arms"]), int(row["legs"]))
            cells.setdefault(key, {})[int(row["load"])] = int(row["category"])
        for key, by_load in cells.items():
            series = [by_load[1], by_load[2], by_load[3]]
            assert series == sorted(series), key

    def test_spec_pinned_chart_cells(self):
        rows = load_table("owas_categories.csv")
        table = {
            (int(r["back"]), int(r["arms"]), int(r["legs"]), int(r["load"])):
                int(r["category"])
            for r in rows
        }
        assert table[(1, 1, 2, 1)] == 1
        assert table[(4, 3, 4, 3)] == 4
