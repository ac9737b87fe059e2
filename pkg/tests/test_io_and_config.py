"""File round-trips and the data-directory override."""

import json

import numpy as np
import pytest

from openj import io
from openj.data import table_path
from openj.model import ModelError, parse_model_description


class TestModelRoundTrip:
    def test_scaled_model_survives_save_load(self, tmp_path, scaled_p50_male):
        path = tmp_path / "model.json"
        io.save_model(scaled_p50_male, path)
        again = io.load_model(path)
        assert again.joint_names() == scaled_p50_male.joint_names()
        np.testing.assert_array_equal(again.q_min, scaled_p50_male.q_min)
        np.testing.assert_array_equal(again.q_neutral, scaled_p50_male.q_neutral)
        for a, b in zip(again.segments, scaled_p50_male.segments):
            assert a.name == b.name
            assert a.primitive.length == b.primitive.length
            assert a.bsp.mass == b.bsp.mass
            np.testing.assert_array_equal(a.bsp.com_offset, b.bsp.com_offset)
        # kinematics identical too
        from openj.model import forward_kinematics

        q = scaled_p50_male.q_neutral
        fk_a = forward_kinematics(scaled_p50_male, q)
        fk_b = forward_kinematics(again, q)
        for name in fk_a:
            np.testing.assert_array_equal(fk_a[name], fk_b[name])

    def test_version_key_required(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"joints": []}))
        with pytest.raises(ModelError, match="openj_model"):
            io.load_model(path)


class TestPostureRoundTrip:
    def test_lossless(self, tmp_path, model):
        q = model.q_neutral
        q[7] = 0.1234567890123
        ctx = {"force_load_kg": 3.5, "note": "left bin"}
        path = tmp_path / "posture.json"
        io.save_posture(path, q, "sitting", ctx, model_ref="model.json")
        q2, support, ctx2, ref = io.load_posture(path)
        np.testing.assert_array_equal(q, q2)
        assert support == "sitting"
        assert ctx2 == ctx
        assert ref == "model.json"


class TestDataDirOverride:
    def test_table_override_via_environment(self, tmp_path, monkeypatch):
        custom = tmp_path / "tables"
        custom.mkdir()
        (custom / "winter.csv").write_text(
            "segment,stature_ratio,source_citation\nforearm,0.2,\"local override\"\n"
        )
        monkeypatch.setenv("OPENJ_DATA_DIR", str(custom))
        assert table_path("winter.csv") == custom / "winter.csv"
        # files absent from the override directory fall back to the bundle
        bundled = table_path("deleva.csv")
        assert bundled.exists()
        assert "tables" in str(bundled)

    def test_override_feeds_the_tier_pipeline(self, tmp_path, monkeypatch, db):
        from openj.anthro import RegressionSet, TargetProfile, scale_segments
        from openj.data import load_table

        custom = tmp_path / "tables"
        custom.mkdir()
        rows = load_table("winter.csv")
        lines = ["segment,stature_ratio,source_citation"]
        for row in rows:
            ratio = "0.200" if row["segment"] == "forearm" else row["stature_ratio"]
            lines.append(f'{row["segment"]},{ratio},"override"')
        (custom / "winter.csv").write_text("\n".join(lines) + "\n")
        monkeypatch.setenv("OPENJ_DATA_DIR", str(custom))

        profile = TargetProfile(sex="male", stature=1700.0, weight=75.0,
                                sitting_height=890.0)
        dims = scale_segments(profile, db, RegressionSet({}))
        assert abs(dims["forearm_l"].length_mm - 0.2 * 1700.0) < 1e-9


class TestSidecarOverrides:
    def test_limits_override_applies(self):
        from openj.data import reference_path

        urdf = reference_path("reference_model.urdf").read_text()
        sidecar = reference_path("reference_model.meta.yaml").read_text()
        sidecar = sidecar.replace(
            "  elbow_r_flexion:\n    weight: 1.0\n    neutral: 0.000000",
            "  elbow_r_flexion:\n    weight: 1.0\n    neutral: 0.000000\n"
            "    limits_override: [-0.05, 2.0]\n    velocity_limit: 1.5",
        )
        model = parse_model_description(urdf, sidecar)
        joint = model.joints[model.joint_index("elbow_r_flexion")]
        assert joint.q_min == -0.05 and joint.q_max == 2.0
        assert joint.velocity_limit == 1.5

    def test_limits_override_still_guards_neutral(self):
        # an override that excludes the neutral value is rejected by name
        from openj.data import reference_path

        urdf = reference_path("reference_model.urdf").read_text()
        sidecar = reference_path("reference_model.meta.yaml").read_text()
        sidecar = sidecar.replace(
            "  elbow_r_flexion:\n    weight: 1.0\n    neutral: 0.000000",
            "  elbow_r_flexion:\n    weight: 1.0\n    neutral: 0.000000\n"
            "    limits_override: [0.5, 2.0]",
        )
        with pytest.raises(ModelError, match="elbow_r_flexion"):
            parse_model_description(urdf, sidecar)
