"""Acceptable-demand table lookups: exact cells, thresholds, interpolation."""

import pytest

from openj.assess import AssessmentError, PostureState, run_assessments
from openj.assess.snook import acceptable_limit
from openj.data import load_table


def snook(model, **context):
    state = PostureState.from_posture(model, model.q_neutral, "standing", context)
    return run_assessments(state, ["snook"])[0]


def cell(action, sex, freq, dist):
    for row in load_table("snook.csv"):
        if (row["action"] == action and row["sex"] == sex
                and float(row["frequency_per_min"]) == freq
                and float(row["distance"]) == dist
                and int(row["percentile"]) == 75):
            return float(row["limit_kg"])
    raise KeyError((action, sex, freq, dist))


class TestLookups:
    def test_grid_point_exact(self):
        assert acceptable_limit("lift", "male", 1.0, 51.0) == cell(
            "lift", "male", 1.0, 51.0
        )
        assert acceptable_limit("carry", "female", 0.5, 4.3) == cell(
            "carry", "female", 0.5, 4.3
        )

    def test_every_grid_point_matches_its_cell(self):
        for row in load_table("snook.csv"):
            got = acceptable_limit(
                row["action"], row["sex"],
                float(row["frequency_per_min"]), float(row["distance"]),
                int(row["percentile"]),
            )
            assert got == float(row["limit_kg"]), row

    def test_frequency_midpoint_is_arithmetic_mean(self):
        # midway between the 1.0 and 4.3 grid rows at a grid distance
        lo = cell("lift", "male", 1.0, 51.0)
        hi = cell("lift", "male", 4.3, 51.0)
        mid = acceptable_limit("lift", "male", (1.0 + 4.3) / 2, 51.0)
        assert abs(mid - (lo + hi) / 2) < 1e-12

    def test_bilinear_hand_check(self):
        # f=2.65 (t=0.5 between 1 and 4.3), d=63.5 (t=0.5 between 51 and 76)
        corners = [cell("lift", "male", f, d) for f in (1.0, 4.3) for d in (51, 76)]
        expected = sum(corners) / 4.0
        got = acceptable_limit("lift", "male", 2.65, 63.5)
        assert abs(got - expected) < 1e-12

    def test_outside_grid_raises(self):
        with pytest.raises(AssessmentError, match="outside the shipped table"):
            acceptable_limit("lift", "male", 0.05, 51.0)
        with pytest.raises(AssessmentError, match="outside the shipped table"):
            acceptable_limit("carry", "female", 1.0, 20.0)

    def test_unshipped_action_or_percentile(self):
        with pytest.raises(AssessmentError, match="shipped"):
            acceptable_limit("push", "male", 1.0, 51.0)
        with pytest.raises(AssessmentError, match="shipped"):
            acceptable_limit("lift", "male", 1.0, 51.0, percentile=50)


class TestAssessment:
    def test_threshold_acceptable_flip(self, model):
        limit = cell("lift", "male", 1.0, 51.0)
        below = snook(model, action="lift", sex="male", frequency_per_min=1.0,
                      distance=51.0, demand_kg=limit - 1e-9)
        above = snook(model, action="lift", sex="male", frequency_per_min=1.0,
                      distance=51.0, demand_kg=limit + 1e-9)
        assert below.subscores["acceptable"] is True
        assert below.level[0] == 1
        assert above.subscores["acceptable"] is False
        assert above.level[0] == 2

    def test_result_reports_limit_and_note(self, model):
        r = snook(model, action="carry", sex="male", frequency_per_min=0.2,
                  distance=2.1, demand_kg=10.0)
        assert r.subscores["limit_kg"] == cell("carry", "male", 0.2, 2.1)
        assert "P75" in r.subscores["accommodation_note"]
        assert r.automation == "PARTIAL"
