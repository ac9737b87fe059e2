"""Anatomical angle extraction and the canonical posture state."""

import math

import numpy as np
import pytest

from openj.assess import PostureState, extract_ergonomic_angles
from openj.model import forward_kinematics

from conftest import random_in_limit_postures

DEG = math.pi / 180.0


def posture_with(model, **joint_degrees):
    q = model.q_neutral
    for name, deg in joint_degrees.items():
        q[model.joint_index(name)] = deg * DEG
    return q


class TestAngleExtraction:
    def test_neutral_all_zero_no_flags(self, model):
        ang = extract_ergonomic_angles(model, model.q_neutral)
        for field in ("trunk_flexion", "trunk_side_bend", "trunk_twist",
                      "neck_flexion", "upper_arm_elevation_l",
                      "upper_arm_elevation_r", "elbow_flexion_l",
                      "wrist_flexion_r", "knee_flexion_l"):
            assert abs(getattr(ang, field)) < 1e-9, field
        assert not ang.upper_arm_abducted_l
        assert not ang.shoulder_raised_r

    def test_trunk_is_lumbar_plus_thoracic(self, model):
        q = posture_with(model, lumbar_flexion=20, thoracic_flexion=15)
        ang = extract_ergonomic_angles(model, q)
        assert abs(ang.trunk_flexion - 35.0) < 1e-9

    def test_pure_shoulder_flexion_elevation_matches_fk_oracle(self, model):
        q = posture_with(model, shoulder_r_flexion=90)
        ang = extract_ergonomic_angles(model, q)
        assert abs(ang.upper_arm_elevation_r - 90.0) < 0.1
        # FK oracle: angle between the shoulder->elbow vector and the
        # trunk's downward axis, computed from raw frames
        fk = forward_kinematics(model, q)
        arm = fk["forearm_r"][:3, 3] - fk["upper_arm_r"][:3, 3]
        down = -fk["thorax"][:3, 2]
        oracle = math.degrees(
            math.acos(np.dot(arm, down) / np.linalg.norm(arm))
        )
        assert abs(abs(ang.upper_arm_elevation_r) - oracle) < 1e-9

    def test_extension_is_signed_negative(self, model):
        q = posture_with(model, shoulder_l_flexion=-40)
        ang = extract_ergonomic_angles(model, q)
        assert -40.1 < ang.upper_arm_elevation_l < -39.9

    def test_abduction_flag_threshold(self, model):
        ang = extract_ergonomic_angles(model, posture_with(model,
                                                           shoulder_l_abduction=35))
        assert ang.upper_arm_abducted_l
        ang = extract_ergonomic_angles(model, posture_with(model,
                                                           shoulder_l_abduction=20))
        assert not ang.upper_arm_abducted_l

    def test_limb_angles_map_from_dof(self, model):
        q = posture_with(model, elbow_l_flexion=85, wrist_r_flexion=-30,
                         wrist_r_deviation=15, knee_r_flexion=50,
                         elbow_r_pronation=40)
        ang = extract_ergonomic_angles(model, q)
        assert abs(ang.elbow_flexion_l - 85.0) < 1e-9
        assert abs(ang.wrist_flexion_r + 30.0) < 1e-9
        assert abs(ang.wrist_deviation_r - 15.0) < 1e-9
        assert abs(ang.knee_flexion_r - 50.0) < 1e-9
        assert abs(ang.forearm_rotation_r - 40.0) < 1e-9


class TestPostureState:
    def test_angles_recomputed_not_stale(self, model):
        for q in random_in_limit_postures(model, 10, seed=15):
            state = PostureState.from_posture(model, q, "standing", {})
            again = extract_ergonomic_angles(model, state.q)
            assert state.angles == again

    def test_support_validation(self, model):
        with pytest.raises(ValueError, match="support"):
            PostureState.from_posture(model, model.q_neutral, "hovering", {})
