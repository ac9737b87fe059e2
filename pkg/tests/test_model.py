"""Mannequin parsing, forward kinematics, Jacobians and center of mass."""

import numpy as np
import pytest

from openj.data import reference_path
from openj.model import (
    ModelError,
    center_of_mass,
    forward_kinematics,
    jacobian,
    load_reference_model,
    parse_model_description,
)
from openj.model.kinematics import fk_point_batch

from conftest import random_in_limit_postures

URDF = reference_path("reference_model.urdf").read_text()
SIDECAR = reference_path("reference_model.meta.yaml").read_text()

# reference skeleton constants (stature fractions at 1.750 m, see data files)
UA = 0.186 * 1.750
FA = 0.146 * 1.750
SHOULDER_Z = (0.530 + 0.078 + 0.095 + 0.115) * 1.750
SHOULDER_Y = 0.1295 * 1.750


class TestParsing:
    def test_reference_model_shape(self, model):
        assert model.dof == 41
        assert model.segment_names()[0] == "pelvis"
        assert len(model.segments) == 17
        assert model.provenance["kinematics_sha256"]
        assert model.provenance["sidecar_sha256"]

    def test_dof_layout_enumeration(self, model):
        assert model.dof_layout == {
            "pelvis": 6, "spine": 6, "neck": 3, "shoulder": 6, "elbow": 4,
            "wrist": 4, "hip": 6, "knee": 2, "ankle": 4,
        }
        assert sum(model.dof_layout.values()) == 41

    def test_no_finger_joints(self, model):
        assert not any("finger" in j.name or "thumb" in j.name
                       for j in model.joints)

    def test_missing_sidecar_entry_names_joint(self):
        bad = SIDECAR.replace("  elbow_l_flexion:\n", "  elbow_l_gone:\n", 1)
        with pytest.raises(ModelError, match="elbow_l_flexion"):
            parse_model_description(URDF, bad)

    def test_neutral_outside_limits_names_joint_and_bounds(self):
        bad = SIDECAR.replace(
            "  knee_l_flexion:\n    weight: 1.0\n    neutral: 0.000000",
            "  knee_l_flexion:\n    weight: 1.0\n    neutral: -1.0",
        )
        with pytest.raises(ModelError) as err:
            parse_model_description(URDF, bad)
        msg = str(err.value)
        assert "knee_l_flexion" in msg and "-1.0" in msg and "0.0" in msg

    def test_wrong_dof_count_reports_actual(self):
        # drop one movable joint from the kinematics file
        import re

        bad = re.sub(
            r'  <joint name="wrist_l_deviation".*?</joint>\n', "", URDF, flags=re.S
        )
        bad = bad.replace('<child link="hand_l"/>', '<child link="hand_l"/>', 1)
        # rewire: wrist_l_flexion now parents hand_l directly
        bad = bad.replace('<child link="wrist_l_v1"/>', '<child link="hand_l"/>')
        bad = bad.replace('<link name="wrist_l_v1"/>\n', "")
        sidecar = SIDECAR.replace("parent_joint: wrist_l_deviation",
                                  "parent_joint: wrist_l_flexion")
        with pytest.raises(ModelError, match="40"):
            parse_model_description(bad, sidecar)

    def test_cyclic_graph_rejected(self):
        bad = URDF.replace('<parent link="world"/>', '<parent link="pelvis"/>', 1)
        with pytest.raises(ModelError, match="(cycle|root)"):
            parse_model_description(bad, SIDECAR)

    def test_unknown_elements_warn_not_fail(self):
        doc = URDF.replace(
            "<robot name=\"openj_reference_41dof\">",
            "<robot name=\"openj_reference_41dof\"><gizmo/>",
        )
        m = parse_model_description(doc, SIDECAR)
        assert any("gizmo" in w for w in m.provenance["parse_warnings"])


class TestForwardKinematics:
    def test_neutral_zero_base_composes_fixed_offsets(self, model):
        q = model.q_neutral
        q[model.joint_index("pelvis_tz")] = 0.0  # pelvis at origin
        fk = forward_kinematics(model, q)
        # hand-composable chain: all rotations identity, pure offsets
        np.testing.assert_allclose(fk["pelvis"][:3, 3], [0, 0, 0], atol=1e-12)
        np.testing.assert_allclose(
            fk["thorax"][:3, 3], [0, 0, (0.078 + 0.095) * 1.750], atol=1e-9
        )
        for name, tf in fk.items():
            np.testing.assert_allclose(tf[:3, :3], np.eye(3), atol=1e-12)

    def test_pelvis_translation_shifts_everything(self, model):
        q0 = model.q_neutral
        q1 = q0.copy()
        q1[model.joint_index("pelvis_tx")] = 0.5
        fk0 = forward_kinematics(model, q0)
        fk1 = forward_kinematics(model, q1)
        for name in fk0:
            np.testing.assert_allclose(
                fk1[name][:3, 3] - fk0[name][:3, 3], [0.5, 0, 0], atol=1e-12
            )
            np.testing.assert_allclose(fk1[name][:3, :3], fk0[name][:3, :3],
                                       atol=1e-12)

    def test_elbow_90_planar_two_link_hand_computation(self, model):
        # elbow flexion rotates the forearm from straight down to straight
        # forward: wrist = shoulder + (forearm, 0, -upper_arm)
        q = model.q_neutral
        q[model.joint_index("elbow_r_flexion")] = np.pi / 2
        fk = forward_kinematics(model, q)
        expected = np.array([FA, -SHOULDER_Y, SHOULDER_Z - UA])
        np.testing.assert_allclose(fk["hand_r"][:3, 3], expected, atol=1e-9)

    def test_rigidity_over_random_postures(self, model):
        Q = random_in_limit_postures(model, 50, seed=11)
        for q in Q:
            for tf in forward_kinematics(model, q).values():
                R = tf[:3, :3]
                assert np.abs(R.T @ R - np.eye(3)).max() < 1e-9
                assert np.linalg.det(R) > 0

    def test_dimension_mismatch(self, model):
        with pytest.raises(ModelError, match="shape"):
            forward_kinematics(model, np.zeros(40))

    def test_batch_matches_single(self, model):
        Q = random_in_limit_postures(model, 20, seed=3)
        pts = fk_point_batch(model, Q, "hand_l", np.array([0.01, 0.0, -0.05]))
        for i, q in enumerate(Q):
            tf = forward_kinematics(model, q)["hand_l"]
            expected = tf[:3, :3] @ [0.01, 0.0, -0.05] + tf[:3, 3]
            np.testing.assert_allclose(pts[i], expected, atol=1e-12)


class TestJacobian:
    def test_off_path_columns_zero(self, model):
        q = model.q_neutral
        J = jacobian(model, q, "hand_r")
        names = model.joint_names()
        for prefix in ("shoulder_l", "elbow_l", "wrist_l", "hip", "knee", "ankle",
                       "neck"):
            for i, n in enumerate(names):
                if n.startswith(prefix):
                    assert np.abs(J[:, i]).max() == 0.0, n

    def test_pelvis_translation_columns_identity(self, model):
        Q = random_in_limit_postures(model, 10, seed=5)
        for q in Q:
            J = jacobian(model, q, "head", np.array([0.0, 0.02, 0.1]))
            np.testing.assert_allclose(J[:, :3], np.eye(3), atol=1e-12)

    def test_finite_difference_agreement(self, model):
        # central differences at 1e-6 within 1e-5 absolute, 100 seeded postures
        Q = random_in_limit_postures(model, 100, seed=2024)
        point = np.array([0.0, 0.0, -0.05])
        h = 1e-6
        for q in Q:
            J = jacobian(model, q, "hand_r", point)
            fd = np.zeros_like(J)
            for j in range(model.dof):
                qp = q.copy()
                qm = q.copy()
                qp[j] += h
                qm[j] -= h
                tfp = forward_kinematics(model, qp)["hand_r"]
                tfm = forward_kinematics(model, qm)["hand_r"]
                pp = tfp[:3, :3] @ point + tfp[:3, 3]
                pm = tfm[:3, :3] @ point + tfm[:3, 3]
                fd[:, j] = (pp - pm) / (2 * h)
            assert np.abs(J - fd).max() < 1e-5

    def test_unknown_frame(self, model):
        with pytest.raises(ModelError, match="unknown frame"):
            jacobian(model, model.q_neutral, "tail")

    def test_batch_jacobian_matches_single(self, model):
        Q = random_in_limit_postures(model, 8, seed=9)
        pts, J = fk_point_batch(model, Q, "hand_r", return_jacobian=True)
        for i, q in enumerate(Q):
            np.testing.assert_allclose(J[i], jacobian(model, q, "hand_r"),
                                       atol=1e-10)


class TestCenterOfMass:
    def test_translation_equivariance(self, model):
        q0 = model.q_neutral
        q1 = q0.copy()
        q1[:3] += [0.2, -0.1, 0.05]
        np.testing.assert_allclose(
            center_of_mass(model, q1) - center_of_mass(model, q0),
            [0.2, -0.1, 0.05],
            atol=1e-12,
        )

    def test_matches_independent_mass_weighted_sum(self, model):
        # brute-force oracle straight off the public FK output
        Q = random_in_limit_postures(model, 10, seed=7)
        for q in Q:
            fk = forward_kinematics(model, q)
            total = 0.0
            acc = np.zeros(3)
            for seg in model.segments:
                tf = fk[seg.name]
                acc += seg.bsp.mass * (tf[:3, :3] @ seg.bsp.com_offset + tf[:3, 3])
                total += seg.bsp.mass
            np.testing.assert_allclose(center_of_mass(model, q), acc / total,
                                       atol=1e-12)

    def test_single_segment_reduction(self, model):
        # zero every mass but one: CoM = that segment's world CoM point
        from openj.model import BodySegmentParams

        bsp = {
            s.name: BodySegmentParams(
                mass=0.0, com_offset=s.bsp.com_offset,
                gyration_radii=s.bsp.gyration_radii,
            )
            for s in model.segments
        }
        keep = model.segment("head")
        bsp["head"] = BodySegmentParams(
            mass=5.0, com_offset=keep.bsp.com_offset,
            gyration_radii=keep.bsp.gyration_radii,
        )
        single = model.with_bsp(bsp, total_mass=5.0)
        q = single.q_neutral
        tf = forward_kinematics(single, q)["head"]
        np.testing.assert_allclose(
            center_of_mass(single, q),
            tf[:3, :3] @ keep.bsp.com_offset + tf[:3, 3],
            atol=1e-12,
        )

    def test_union_linearity(self, model):
        # CoM of two disjoint subsets combines by mass-weighted average
        q = model.q_neutral
        fk = forward_kinematics(model, q)

        def subset_com(names):
            acc = np.zeros(3)
            mass = 0.0
            for seg in model.segments:
                if seg.name in names:
                    tf = fk[seg.name]
                    acc += seg.bsp.mass * (tf[:3, :3] @ seg.bsp.com_offset + tf[:3, 3])
                    mass += seg.bsp.mass
            return acc / mass, mass

        left = {s.name for s in model.segments if s.name.endswith("_l")}
        rest = {s.name for s in model.segments} - left
        com_l, m_l = subset_com(left)
        com_r, m_r = subset_com(rest)
        np.testing.assert_allclose(
            center_of_mass(model, q),
            (com_l * m_l + com_r * m_r) / (m_l + m_r),
            atol=1e-12,
        )

    def test_zero_mass_errors(self):
        bare = load_reference_model(populate_bsp=False)
        with pytest.raises(ModelError, match="mass"):
            center_of_mass(bare, bare.q_neutral)
