"""Local HTTP session service for interactive frontends.

Plain JSON over a loopback port; one differential-IK step per request is the
frame loop. Sessions hold all state, expire after idle minutes, and their
mutations are serialized per session.
"""

from __future__ import annotations

import base64
import threading
import time
import uuid
from typing import Any, Optional

import numpy as np
from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from openj.anthro import (
    AnthroError,
    TargetProfile,
    build_scaled_model,
    fit_tier2_regressions,
    load_default_database,
)
from openj.assess import PostureState, registered_ids, run_assessments
from openj.assess.base import AssessmentError, AssessmentResult
from openj.model import HumanModel, ModelError, forward_kinematics
from openj.posture import (
    PostureError,
    ReachTarget,
    SolveOptions,
    solve_posture,
    step_differential_ik,
)
from openj.report import segment_risk_colors
from openj.report.export import _result_entry, _sanitize
from openj.tasksim import TaskError, parse_task, simulate
from openj.workspace import MeshError, load_mesh, reach_envelope, vision_classify
from openj.workspace.vision import ConeAngles, VisionField


class Session:
    def __init__(self, model: HumanModel):
        self.id = uuid.uuid4().hex
        self.model = model
        self.q = model.q_neutral
        self.support = "standing"
        self.context: dict[str, Any] = {}
        self.live_method: Optional[str] = None
        self.scene_ids: list[str] = []
        self.seq = 0
        self.created_at = time.time()
        self.last_access = time.time()
        self.lock = threading.Lock()


class CreateSessionBody(BaseModel):
    sex: str = "male"
    percentile: Optional[float] = None
    stature_mm: Optional[float] = Field(default=None, alias="stature")
    weight_kg: Optional[float] = Field(default=None, alias="weight")
    sitting_height_mm: Optional[float] = None
    live_method: Optional[str] = None

    model_config = {"populate_by_name": True}


class TargetBody(BaseModel):
    frame: str
    goal: list[float]
    point_in_frame: list[float] = [0.0, 0.0, 0.0]
    tolerance: float = 0.005


class StepBody(BaseModel):
    target: TargetBody
    dt: float = 0.02
    live_method: Optional[str] = None
    context: Optional[dict[str, Any]] = None


class SolveBody(BaseModel):
    targets: list[TargetBody]
    restarts: int = 5
    seed: int = 0
    balance: Optional[list[list[float]]] = None


class AssessBody(BaseModel):
    methods: list[str]
    context: dict[str, Any] = {}
    support: Optional[str] = None


class SceneBody(BaseModel):
    name: str = "scene"
    content_b64: str
    scale: float = 1.0


class ReachBody(BaseModel):
    chain: str | list[str] = "arm_r"
    n_samples: int = 20000
    seed: int = 0
    frame: Optional[str] = None


class VisionBody(BaseModel):
    target: list[float]
    central_deg: float = 30.0
    peripheral_deg: float = 60.0
    check_occlusion: bool = True


class SimulateBody(BaseModel):
    task: dict[str, Any]
    seed: int = 0


def _frames_payload(model: HumanModel, q) -> dict:
    fk = forward_kinematics(model, q)
    out = {}
    for seg in model.segments:
        tf = fk[seg.name]
        prim = seg.primitive
        out[seg.name] = {
            "pos": tf[:3, 3].tolist(),
            "rot": tf[:3, :3].reshape(-1).tolist(),
            "radius": prim.radius,
            "length": prim.length,
            "axis": prim.axis.tolist(),
            "shift": prim.shift.tolist(),
        }
    return out


def create_app(idle_minutes: float = 60.0) -> FastAPI:
    app = FastAPI(title="openj session service", version="1")
    sessions: dict[str, Session] = {}
    scenes: dict[str, Any] = {}
    cache: dict[str, Any] = {}
    registry_lock = threading.Lock()

    def scaled_model(body: CreateSessionBody) -> HumanModel:
        with registry_lock:
            if "db" not in cache:
                cache["db"] = load_default_database()
                cache["reg"] = fit_tier2_regressions(cache["db"])
        db, reg = cache["db"], cache["reg"]
        if body.percentile is not None:
            profile = TargetProfile.from_percentile(db, body.sex, body.percentile)
        else:
            if body.stature_mm is None or body.weight_kg is None:
                raise AnthroError("give either percentile or stature_mm and weight_kg")
            profile = TargetProfile(
                sex=body.sex,
                stature=body.stature_mm,
                weight=body.weight_kg,
                sitting_height=body.sitting_height_mm,
            )
        return build_scaled_model(profile, db, reg)

    def get_session(session_id: str) -> Session:
        _purge()
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        session.last_access = time.time()
        return session

    def _purge() -> None:
        deadline = time.time() - idle_minutes * 60.0
        for sid in [s for s, sess in sessions.items() if sess.last_access < deadline]:
            sessions.pop(sid, None)

    def _http_422(exc: Exception) -> HTTPException:
        return HTTPException(status_code=422, detail=str(exc))

    @app.exception_handler(AnthroError)
    @app.exception_handler(AssessmentError)
    @app.exception_handler(ModelError)
    @app.exception_handler(PostureError)
    @app.exception_handler(TaskError)
    @app.exception_handler(MeshError)
    async def _domain_error(request, exc):  # noqa: ANN001
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"ok": True, "sessions": len(sessions)}

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        model = scaled_model(body)
        session = Session(model)
        if body.live_method:
            if body.live_method not in registered_ids():
                raise _http_422(AssessmentError(
                    f"unknown method {body.live_method!r}; registered: {registered_ids()}"
                ))
            session.live_method = body.live_method
        sessions[session.id] = session
        return {
            "session_id": session.id,
            "model": {
                "dof": model.dof,
                "dof_layout": model.dof_layout,
                "segments": model.segment_names(),
                "total_mass_kg": model.total_mass(),
                "joint_names": model.joint_names(),
                "q_min": model.q_min.tolist(),
                "q_max": model.q_max.tolist(),
            },
            "q": session.q.tolist(),
            "frames": _frames_payload(model, session.q),
        }

    @app.get("/sessions")
    def list_sessions():
        _purge()
        return {"sessions": sorted(sessions)}

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return {
                "session_id": session.id,
                "q": session.q.tolist(),
                "seq": session.seq,
                "support": session.support,
                "context": _sanitize(session.context),
                "live_method": session.live_method,
                "frames": _frames_payload(session.model, session.q),
            }

    def _live_colors(session: Session) -> Optional[dict]:
        method = session.live_method
        if not method:
            return None
        state = PostureState.from_posture(
            session.model, session.q, session.support, session.context
        )
        results = run_assessments(state, [method])
        result = results[0]
        if not isinstance(result, AssessmentResult):
            return None
        colors = segment_risk_colors(result)
        return {
            "method": method,
            "grand_score": _sanitize(result.grand_score),
            "level": result.level[0],
            "level_label": result.level[1],
            "segments": {
                base: {"rgb": list(c.rgb), "risk": c.normalized_risk}
                for base, c in colors.items()
            },
        }

    @app.post("/sessions/{session_id}/ik/step")
    def ik_step(session_id: str, body: StepBody):
        session = get_session(session_id)
        target = ReachTarget(
            frame=body.target.frame,
            goal=np.array(body.target.goal),
            point_in_frame=np.array(body.target.point_in_frame),
            tolerance=body.target.tolerance,
        )
        with session.lock:
            if body.live_method is not None:
                session.live_method = body.live_method or None
            if body.context:
                session.context.update(body.context)
            new_q = step_differential_ik(session.model, session.q, target, body.dt)
            session.q = new_q.q
            session.seq += 1
            fk = forward_kinematics(session.model, session.q)
            tf = fk[target.frame]
            attached = tf[:3, :3] @ target.point_in_frame + tf[:3, 3]
            return {
                "seq": session.seq,
                "q": session.q.tolist(),
                "frames": _frames_payload(session.model, session.q),
                "attached_point": attached.tolist(),
                "error_m": float(np.linalg.norm(attached - target.goal)),
                "colors": _live_colors(session),
            }

    @app.post("/sessions/{session_id}/ik/solve")
    def ik_solve(session_id: str, body: SolveBody):
        session = get_session(session_id)
        targets = [
            ReachTarget(t.frame, np.array(t.goal), np.array(t.point_in_frame),
                        t.tolerance)
            for t in body.targets
        ]
        options = SolveOptions(
            restarts=body.restarts,
            seed=body.seed,
            balance=None if body.balance is None else np.array(body.balance),
        )
        with session.lock:
            solution = solve_posture(session.model, targets, options)
            session.q = solution.q
            session.seq += 1
            return {
                "seq": session.seq,
                "feasible": bool(solution.feasible),
                "objective_value": solution.objective_value,
                "residuals_m": list(solution.residuals),
                "q": session.q.tolist(),
                "frames": _frames_payload(session.model, session.q),
                "colors": _live_colors(session),
            }

    @app.post("/sessions/{session_id}/assess")
    def assess_endpoint(session_id: str, body: AssessBody):
        session = get_session(session_id)
        unknown = [m for m in body.methods if m not in registered_ids()]
        if unknown:
            raise _http_422(AssessmentError(
                f"unknown methods {unknown}; registered: {registered_ids()}"
            ))
        with session.lock:
            if body.support:
                session.support = body.support
            session.context.update(body.context)
            state = PostureState.from_posture(
                session.model, session.q, session.support, session.context
            )
        results = run_assessments(state, body.methods)
        missing = [
            entry for entry in results
            if not isinstance(entry, AssessmentResult) and entry.missing_fields
        ]
        if missing:
            raise HTTPException(
                status_code=422,
                detail={
                    "message": "missing or invalid context fields",
                    "fields": {m.method: list(m.missing_fields) for m in missing},
                },
            )
        return {"results": [_result_entry(r) for r in results]}

    @app.post("/scenes")
    def upload_scene(body: SceneBody):
        try:
            raw = base64.b64decode(body.content_b64)
        except Exception as exc:
            raise _http_422(MeshError(f"content_b64 is not valid base64: {exc}"))
        mesh = load_mesh(raw, name=body.name, scale=body.scale)
        scene_id = uuid.uuid4().hex
        scenes[scene_id] = mesh
        return {
            "scene_id": scene_id,
            "name": mesh.name,
            "triangles": int(len(mesh.triangles)),
            "vertices": mesh.vertices.tolist(),
            "faces": mesh.triangles.tolist(),
            "degenerate_dropped": mesh.degenerate_dropped,
        }

    @app.post("/sessions/{session_id}/reach")
    def reach(session_id: str, body: ReachBody):
        session = get_session(session_id)
        env = reach_envelope(
            session.model, body.chain, n_samples=body.n_samples, seed=body.seed,
            frame=body.frame,
        )
        return {
            "frame": env.frame,
            "seed": env.seed,
            "sample_count": env.sample_count,
            "planar": env.is_planar,
            "hull_vertices": env.hull_vertices.tolist(),
            "hull_triangles": env.hull_triangles.tolist(),
        }

    @app.post("/sessions/{session_id}/vision")
    def vision(session_id: str, body: VisionBody):
        session = get_session(session_id)
        with session.lock:
            head = forward_kinematics(session.model, session.q)["head"]
        field = VisionField(
            central=ConeAngles(*(body.central_deg,) * 4),
            peripheral=ConeAngles(*(body.peripheral_deg,) * 4),
        )
        classification, angle = vision_classify(head, field, np.array(body.target))
        visible = True
        hit = None
        if body.check_occlusion and session.scene_ids:
            from openj.workspace import occlusion_check

            eye = head[:3, :3] @ field.left_eye_offset + head[:3, 3]
            meshes = [scenes[sid] for sid in session.scene_ids if sid in scenes]
            visible, hit_pt = occlusion_check(meshes, eye, np.array(body.target))
            hit = None if hit_pt is None else hit_pt.tolist()
        return {
            "classification": classification,
            "angle_deg": angle,
            "visible": bool(visible),
            "first_hit": hit,
        }

    @app.post("/sessions/{session_id}/scenes/{scene_id}/attach")
    def attach_scene(session_id: str, scene_id: str):
        session = get_session(session_id)
        if scene_id not in scenes:
            raise HTTPException(status_code=404, detail=f"unknown scene {scene_id}")
        if scene_id not in session.scene_ids:
            session.scene_ids.append(scene_id)
        return {"scenes": session.scene_ids}

    @app.post("/sessions/{session_id}/simulate")
    def simulate_endpoint(session_id: str, body: SimulateBody):
        import json as _json

        from openj.report import build_report, validate_report

        session = get_session(session_id)
        task = parse_task(_json.dumps(body.task))
        meshes = [scenes[sid] for sid in session.scene_ids if sid in scenes]
        timeline = simulate(session.model, meshes, task, SolveOptions(seed=body.seed))
        doc = build_report(timeline, model=session.model)
        validate_report(doc)
        return doc

    return app


app = create_app()
