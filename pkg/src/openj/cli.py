"""Batch command-line surface: scale, solve, assess, reach, vision, simulate,
report, serve.

Exit codes: 0 success (including infeasible solves, which are results, not
failures), 1 runtime failure, 2 usage/validation error. Machine-readable
errors go to stderr as one JSON object with a stable `code`.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np
import yaml

from openj.anthro import AnthroError
from openj.assess.base import AssessmentError
from openj.model import ModelError
from openj.posture.types import PostureError
from openj.tasksim import TaskError
from openj.workspace.meshio import MeshError

_VALIDATION_ERRORS = (
    AnthroError, AssessmentError, ModelError, PostureError, TaskError, MeshError,
    ValueError,
)


def _emit_error(code: str, message: str) -> None:
    click.echo(json.dumps({"code": code, "message": message}), err=True)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _load_model_arg(path: str):
    from openj import io

    return io.load_model(path)


def _parse_context(pairs, context_file):
    ctx = {}
    if context_file:
        data = yaml.safe_load(Path(context_file).read_text())
        if not isinstance(data, dict):
            raise AssessmentError("context file must contain a mapping")
        ctx.update(data)
    for pair in pairs:
        if "=" not in pair:
            raise AssessmentError(f"context entries look like key=value, got {pair!r}")
        key, raw = pair.split("=", 1)
        ctx[key.strip()] = yaml.safe_load(raw)
    return ctx


def _parse_target(spec: str):
    from openj.posture import ReachTarget

    if ":" not in spec:
        raise PostureError(f"target looks like frame:x,y,z, got {spec!r}")
    frame, coords = spec.split(":", 1)
    parts = coords.split(",")
    if len(parts) != 3:
        raise PostureError(f"target needs three coordinates, got {spec!r}")
    return ReachTarget(frame.strip(), np.array([float(p) for p in parts]))


class _Command(click.Group):
    def __call__(self, *args, **kwargs):
        try:
            return self.main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as exc:
            _emit_error("usage", exc.format_message())
            sys.exit(2)
        except click.ClickException as exc:
            _emit_error("runtime", exc.format_message())
            sys.exit(1)
        except click.exceptions.Abort:
            sys.exit(1)
        except _VALIDATION_ERRORS as exc:
            _emit_error("validation", str(exc))
            sys.exit(2)
        except Exception as exc:  # unexpected: runtime failure contract
            _emit_error("runtime", f"{type(exc).__name__}: {exc}")
            sys.exit(1)


@click.group(cls=_Command)
@click.version_option(package_name="openj")
def main():
    """Digital human modeling and ergonomic assessment, headless."""


@main.command()
@click.option("--ansur", type=click.Path(exists=True),
              help="survey CSV (defaults to the bundled synthetic population)")
@click.option("--sex", type=click.Choice(["male", "female"]), required=True)
@click.option("--percentile", type=float, default=None,
              help="generate the profile at this population percentile")
@click.option("--stature", type=float, default=None, help="target stature (mm)")
@click.option("--weight", type=float, default=None, help="target weight (kg)")
@click.option("--sitting-height", type=float, default=None, help="mm, optional")
@click.option("--public-release-columns", is_flag=True,
              help="read --ansur with the 2012 public release column names")
@click.option("--out", type=click.Path(), required=True, help="scaled model JSON")
def scale(ansur, sex, percentile, stature, weight, sitting_height,
          public_release_columns, out):
    """Scale the mannequin to a population profile and write a model file."""
    from openj import io
    from openj.anthro import (
        AnsurColumns,
        TargetProfile,
        build_scaled_model,
        load_ansur,
        load_default_database,
    )

    if ansur:
        cols = AnsurColumns.public_release() if public_release_columns else AnsurColumns()
        db = load_ansur(Path(ansur).read_text(), cols)
    else:
        db = load_default_database()
    if percentile is not None:
        profile = TargetProfile.from_percentile(db, sex, percentile)
    else:
        if stature is None or weight is None:
            raise click.UsageError("give either --percentile or --stature and --weight")
        profile = TargetProfile(sex=sex, stature=stature, weight=weight,
                                sitting_height=sitting_height)
    model = build_scaled_model(profile, db)
    io.save_model(model, out)
    summary = {
        "out": str(out),
        "sex": sex,
        "stature_mm": profile.stature,
        "weight_kg": profile.weight,
        "total_mass_kg": model.total_mass(),
        "tiers": {
            name: info["tier"]
            for name, info in model.provenance["scaling"].items()
        },
        "warnings": model.provenance.get("scaling_warnings", []),
    }
    click.echo(json.dumps(summary, indent=2, sort_keys=True))


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--target", "targets", multiple=True, required=True,
              help="frame:x,y,z (repeatable)")
@click.option("--tolerance", type=float, default=0.005, show_default=True)
@click.option("--restarts", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--balance", default=None,
              help="support polygon 'x1,y1;x2,y2;...' enables the balance constraint")
@click.option("--support", type=click.Choice(["standing", "sitting"]),
              default="standing", show_default=True)
@click.option("--out", type=click.Path(), default=None, help="posture JSON")
def solve(model_path, targets, tolerance, restarts, seed, balance, support, out):
    """Predict a comfort-optimal posture reaching the given targets."""
    from dataclasses import replace

    from openj import io
    from openj.posture import SolveOptions, solve_posture

    model = _load_model_arg(model_path)
    parsed = [replace(_parse_target(t), tolerance=tolerance) for t in targets]
    poly = None
    if balance:
        poly = np.array(
            [[float(v) for v in pt.split(",")] for pt in balance.split(";")]
        )
    options = SolveOptions(restarts=restarts, position_tolerance=tolerance,
                           balance=poly, seed=seed)
    solution = solve_posture(model, parsed, options)
    doc = {
        "feasible": bool(solution.feasible),
        "objective_value": solution.objective_value,
        "residuals_m": list(solution.residuals),
        "iterations": solution.iterations,
        "restarts_used": solution.restarts_used,
        "balance_margin_m": solution.balance_margin,
        "posture": io.posture_to_dict(solution.q, support, {}, model_ref=model_path),
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(
            json.dumps(doc["posture"], indent=1)
        )
        click.echo(json.dumps({k: v for k, v in doc.items() if k != "posture"},
                              indent=2, sort_keys=True))
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--posture", "posture_path", type=click.Path(exists=True), required=True)
@click.option("--method", "methods", multiple=True, required=True,
              help="assessment method id (repeatable)")
@click.option("--context", "context_pairs", multiple=True, help="key=value (repeatable)")
@click.option("--context-file", type=click.Path(exists=True), default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@click.option("--figures", type=click.Path(), default=None,
              help="directory for risk-tinted posture PNGs")
@click.option("--out", type=click.Path(), default=None)
def assess(model_path, posture_path, methods, context_pairs, context_file, fmt,
           figures, out):
    """Score a posture file with one or more assessment methods."""
    from openj import io
    from openj.assess import (
        PostureState,
        get_method,
        run_assessments,
        validate_context,
    )
    from openj.report import export_report

    model = _load_model_arg(model_path)
    q, support, file_ctx, _ = io.load_posture(posture_path)
    ctx = {**file_ctx, **_parse_context(context_pairs, context_file)}
    state = PostureState.from_posture(model, q, support, ctx)

    # missing context is a usage error (exit 2) naming every field
    problems = []
    for mid in methods:
        problems += [f"{mid}: {p}" for p in
                     validate_context(get_method(mid).descriptor(), state)]
    if problems:
        raise AssessmentError("missing or invalid context fields: " + "; ".join(problems))

    results = run_assessments(state, list(methods))
    text = export_report(results, fmt, model=model, posture_q=q)
    _write_out(text, out)
    if figures:
        _save_assess_figures(Path(figures), model, q, results)


def _save_assess_figures(fig_dir, model, q, results):
    from openj.assess.base import AssessmentResult
    from openj.report import segment_risk_colors
    from openj.report.figures import save_posture_figure

    fig_dir.mkdir(parents=True, exist_ok=True)
    for r in results:
        if isinstance(r, AssessmentResult):
            save_posture_figure(
                fig_dir / f"posture_{r.method}.png", model, q,
                colors=segment_risk_colors(r),
                title=f"{r.method}: {r.grand_score:g} ({r.level[1]})",
            )


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--chain", default="arm_r", show_default=True,
              help="chain preset (arm_l, arm_r) or comma-separated joint names")
@click.option("--frame", default=None, help="frame carrying the reach point")
@click.option("--samples", type=int, default=50000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--figures", type=click.Path(), default=None)
@click.option("--out", type=click.Path(), required=True, help="envelope OBJ path")
def reach(model_path, chain, frame, samples, seed, figures, out):
    """Monte Carlo reach envelope, exported as OBJ."""
    from openj.workspace import envelope_to_obj, reach_envelope

    model = _load_model_arg(model_path)
    chain_arg = chain if "," not in chain else [c.strip() for c in chain.split(",")]
    env = reach_envelope(model, chain_arg, n_samples=samples, seed=seed, frame=frame)
    Path(out).write_text(envelope_to_obj(env))
    if figures:
        from openj.report.figures import save_envelope_figure

        Path(figures).mkdir(parents=True, exist_ok=True)
        save_envelope_figure(Path(figures) / "reach_envelope.png", env, model,
                             model.q_neutral)
    click.echo(json.dumps({
        "out": str(out),
        "hull_vertices": int(len(env.hull_vertices)),
        "hull_triangles": int(len(env.hull_triangles)),
        "samples": env.sample_count,
        "seed": env.seed,
        "planar": env.is_planar,
    }, indent=2))


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--posture", "posture_path", type=click.Path(exists=True), required=True)
@click.option("--target", required=True, help="x,y,z world meters")
@click.option("--scene", "scenes", multiple=True, type=click.Path(exists=True),
              help="STL/OBJ meshes for occlusion (repeatable)")
@click.option("--central", type=float, default=30.0, show_default=True,
              help="central cone half-angle (deg, symmetric)")
@click.option("--peripheral", type=float, default=60.0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def vision(model_path, posture_path, target, scenes, central, peripheral, out):
    """Classify a target against the vision cones and check occlusion."""
    from openj import io
    from openj.model import forward_kinematics
    from openj.workspace import (
        ConeAngles,
        VisionField,
        load_mesh,
        occlusion_check,
        vision_classify,
    )

    model = _load_model_arg(model_path)
    q, _, _, _ = io.load_posture(posture_path)
    head = forward_kinematics(model, q)["head"]
    goal = np.array([float(v) for v in target.split(",")])
    field = VisionField(central=ConeAngles(*(central,) * 4),
                        peripheral=ConeAngles(*(peripheral,) * 4))
    classification, angle = vision_classify(head, field, goal)
    meshes = [load_mesh(Path(p).read_bytes(), name=Path(p).name) for p in scenes]
    eye = head[:3, :3] @ field.left_eye_offset + head[:3, 3]
    visible, hit = (True, None) if not meshes else occlusion_check(meshes, eye, goal)
    doc = {
        "classification": classification,
        "angle_deg": angle,
        "visible": bool(visible),
        "first_hit": None if hit is None else [float(v) for v in hit],
    }
    _write_out(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)


@main.command()
@click.option("--model", "model_path", type=click.Path(exists=True), required=True)
@click.option("--task", "task_path", type=click.Path(exists=True), required=True)
@click.option("--scene", "scenes", multiple=True, type=click.Path(exists=True))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
              show_default=True)
@click.option("--figures", type=click.Path(), default=None,
              help="directory for per-step posture PNGs")
@click.option("--out", type=click.Path(), default=None)
def simulate(model_path, task_path, scenes, seed, fmt, figures, out):
    """Replay a task file and export the exposure report."""
    from openj.posture import SolveOptions
    from openj.report import export_report
    from openj.tasksim import parse_task, simulate as run_simulation
    from openj.workspace import load_mesh

    model = _load_model_arg(model_path)
    task = parse_task(Path(task_path).read_text())
    meshes = [load_mesh(Path(p).read_bytes(), name=Path(p).name) for p in scenes]
    timeline = run_simulation(model, meshes, task, SolveOptions(seed=seed))
    text = export_report(timeline, fmt, model=model)
    _write_out(text, out)
    if figures:
        _save_timeline_figures(Path(figures), model, timeline, meshes)


def _save_timeline_figures(fig_dir, model, timeline, meshes):
    from openj.assess.base import AssessmentResult
    from openj.report import segment_risk_colors
    from openj.report.figures import save_posture_figure

    fig_dir.mkdir(parents=True, exist_ok=True)
    for step in timeline.steps:
        if step.solution is None:
            continue
        colors = None
        for r in step.results:
            if isinstance(r, AssessmentResult):
                colors = segment_risk_colors(r)
                break
        save_posture_figure(
            fig_dir / f"step_{step.index:02d}_{step.action.kind}.png",
            model, step.solution.q, colors=colors, scene=meshes,
            title=f"step {step.index}: {step.action.kind}",
        )


@main.command()
@click.option("--in", "in_path", type=click.Path(exists=True), required=True,
              help="report JSON produced by assess/simulate")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="csv",
              show_default=True)
@click.option("--out", type=click.Path(), default=None)
def report(in_path, fmt, out):
    """Re-export a report document in another format."""
    from openj.report import validate_report
    from openj.report.export import _to_csv

    doc = json.loads(Path(in_path).read_text())
    validate_report(doc)
    if fmt == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = _to_csv(doc)
    _write_out(text, out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8023, show_default=True)
@click.option("--idle-minutes", type=float, default=60.0, show_default=True)
def serve(host, port, idle_minutes):
    """Run the local HTTP session service."""
    import uvicorn

    from openj.service import create_app

    uvicorn.run(create_app(idle_minutes=idle_minutes), host=host, port=port,
                log_level="warning")


if __name__ == "__main__":
    main()
