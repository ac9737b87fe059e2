"""Plugin registry, context validation, batch isolation."""

import pytest

from openj.assess import (
    AssessmentError,
    AssessmentResult,
    ContextField,
    ErgonomicAssessment,
    MethodFailure,
    PostureState,
    get_method,
    register,
    registered_ids,
    run_assessments,
    unregister,
    validate_context,
)

RULA_CTX = {"muscle_use_static": False, "force_load_kg": 0.0,
            "wrist_twist_range": "mid"}


def neutral_state(model, context=None):
    return PostureState.from_posture(model, model.q_neutral, "standing",
                                     context or {})


class TestValidateContext:
    def test_niosh_empty_context_lists_six_task_variables(self, model):
        desc = get_method("niosh").descriptor()
        missing = validate_context(desc, neutral_state(model))
        assert len(missing) == 6
        named = {m.split(":")[0] for m in missing}
        assert named == {"h_cm", "v_cm", "d_cm", "a_deg", "f_per_min", "coupling"}

    def test_rula_full_context_ok(self, model):
        desc = get_method("rula").descriptor()
        assert validate_context(desc, neutral_state(model, RULA_CTX)) == []

    def test_wrong_typed_field_reported(self, model):
        desc = get_method("rula").descriptor()
        ctx = dict(RULA_CTX, force_load_kg="heavy")
        problems = validate_context(desc, neutral_state(model, ctx))
        assert any("force_load_kg" in p for p in problems)


class TestBatch:
    def test_empty_method_list(self, model):
        assert run_assessments(neutral_state(model), []) == []

    def test_failure_isolated_from_other_methods(self, model):
        state = neutral_state(model, RULA_CTX)  # niosh context missing
        results = run_assessments(state, ["rula", "niosh"])
        assert isinstance(results[0], AssessmentResult)
        assert isinstance(results[1], MethodFailure)
        assert len(results[1].missing_fields) == 6

    def test_batch_equals_individual_calls(self, model):
        ctx = dict(RULA_CTX, load_kg=5.0, coupling="good", activity_static=False,
                   activity_repeated=False, activity_rapid_change=False)
        state = neutral_state(model, ctx)
        batch = run_assessments(state, ["rula", "reba"])
        solo = [run_assessments(state, ["rula"])[0],
                run_assessments(state, ["reba"])[0]]
        assert batch == solo

    def test_unknown_method_lists_registered(self, model):
        with pytest.raises(AssessmentError) as err:
            run_assessments(neutral_state(model), ["ocra"])
        for mid in registered_ids():
            assert mid in str(err.value)


class _ThrowingMethod(ErgonomicAssessment):
    id = "boom"
    automation_level = "FULL"
    required_context_fields = ()

    def assess(self, state):
        raise RuntimeError("deliberate plugin failure")


class _CountingMethod(ErgonomicAssessment):
    id = "count"
    automation_level = "FULL"
    required_context_fields = (
        ContextField("weight_factor", "number", unit="dimensionless"),
    )

    def assess(self, state):
        value = float(state.context["weight_factor"]) * 2
        return AssessmentResult(
            method=self.id, grand_score=value, level=(1, "ok"),
            automation="FULL",
        )


class TestThirdPartyPlugins:
    def test_throwing_plugin_cannot_poison_builtins(self, model):
        register(_ThrowingMethod())
        try:
            state = neutral_state(model, RULA_CTX)
            results = run_assessments(state, ["boom", "rula"])
            assert isinstance(results[0], MethodFailure)
            assert "deliberate" in results[0].error
            assert isinstance(results[1], AssessmentResult)
            assert results[1].grand_score >= 1
        finally:
            unregister("boom")

    def test_custom_plugin_same_path_as_builtins(self, model):
        register(_CountingMethod())
        try:
            state = neutral_state(model, {"weight_factor": 2.5})
            results = run_assessments(state, ["count"])
            assert results[0].grand_score == 5.0
            missing = validate_context(get_method("count").descriptor(),
                                       neutral_state(model))
            assert len(missing) == 1
        finally:
            unregister("count")

    def test_duplicate_registration_rejected(self):
        with pytest.raises(AssessmentError, match="registered"):
            register(get_method("rula"))
