"""HTTP facade over the synthesizer, interpreter, and raster engine.

Sessions are in-memory; each accumulates demonstrated edits against one
dataset, synthesizes a program on request, and applies it to every
dataset image, serving the edited rasters statically.
"""

from __future__ import annotations

import json
import tempfile
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles

from . import datagen
from .annotations import (
    AnnotationFile,
    _DEMO_SCHEMA,
    annotation_to_dict,
    load_dataset,
)
from .dsl import Action, Program, program_to_text
from .interp import eval_program
from .raster import apply_edit, load_image, save_image
from .synth import SearchConfig, Spec, SynthesisFailure, SynthesisTimeout, synthesize

_ACTION_RANK = {a: i for i, a in enumerate(Action)}


@dataclass
class Session:
    id: str
    dataset: str
    # imageId -> objectId -> set of actions; searchLabels imageId -> label
    demos: dict[str, dict[str, set[Action]]] = field(default_factory=dict)
    search_labels: dict[str, str] = field(default_factory=dict)
    program: Program | None = None
    program_text: str | None = None
    report: dict | None = None
    results: list[dict] | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status, detail={"code": code, "message": message})


def create_app(datasets_dir: str | Path | None = None,
               budget_s: float = 180.0, max_size: int = 30) -> FastAPI:
    root = Path(datasets_dir) if datasets_dir else Path(tempfile.mkdtemp(prefix="batchlens-"))
    if not any(root.glob("*/*.ann.json")):
        datagen.write_all(root)
    datasets: dict[str, dict[str, AnnotationFile]] = {
        sub.name: load_dataset(sub)
        for sub in sorted(root.iterdir())
        if sub.is_dir() and not sub.name.startswith("_") and list(sub.glob("*.ann.json"))
    }
    out_root = root / "_output"
    out_root.mkdir(exist_ok=True)

    app = FastAPI(title="batchlens")
    app.state.sessions = {}
    app.state.datasets = datasets
    app.mount("/outputs", StaticFiles(directory=out_root), name="outputs")

    def dataset_or_404(name: str) -> dict[str, AnnotationFile]:
        try:
            return datasets[name]
        except KeyError:
            raise _error(404, "unknown-dataset", f"no dataset {name!r}")

    def annotation_or_404(name: str, image_id: str) -> AnnotationFile:
        ds = dataset_or_404(name)
        try:
            return ds[image_id]
        except KeyError:
            raise _error(404, "unknown-image", f"no image {image_id!r} in {name!r}")

    def session_or_404(sid: str) -> Session:
        try:
            return app.state.sessions[sid]
        except KeyError:
            raise _error(404, "unknown-session", f"no session {sid!r}")

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": [
            {"name": name, "images": len(ds)} for name, ds in datasets.items()
        ]}

    @app.get("/datasets/{name}/images")
    def list_images(name: str):
        ds = dataset_or_404(name)
        return {"images": [
            {"id": i, "objects": len(ds[i].objects),
             "rasterUrl": f"/datasets/{name}/images/{i}/raster"}
            for i in sorted(ds)
        ]}

    @app.get("/datasets/{name}/images/{image_id}/objects")
    def image_objects(name: str, image_id: str):
        return annotation_to_dict(annotation_or_404(name, image_id))

    @app.get("/datasets/{name}/images/{image_id}/raster")
    def image_raster(name: str, image_id: str):
        ann = annotation_or_404(name, image_id)
        path = root / name / (ann.image_path or f"{image_id}.png")
        if not path.exists():
            raise _error(404, "no-raster", f"no raster for {image_id!r}")
        return FileResponse(path, media_type="image/png")

    @app.post("/sessions", status_code=201)
    def create_session(body: dict):
        name = body.get("dataset")
        dataset_or_404(name)
        sid = uuid.uuid4().hex[:12]
        app.state.sessions[sid] = Session(sid, name)
        return {"id": sid, "dataset": name}

    def _demo_summary(s: Session) -> dict:
        return {
            "id": s.id, "dataset": s.dataset,
            "demos": [
                {"imageId": i,
                 **({"searchLabel": s.search_labels[i]}
                    if i in s.search_labels else {}),
                 "edits": [
                     {"objectId": oid,
                      "actions": [a.name for a in
                                  sorted(acts, key=_ACTION_RANK.__getitem__)]}
                     for oid, acts in sorted(s.demos[i].items())]}
                for i in sorted(s.demos)
            ],
        }

    @app.post("/sessions/{sid}/demos")
    def add_demos(sid: str, body: dict):
        s = session_or_404(sid)
        try:
            jsonschema.validate(body, _DEMO_SCHEMA)
        except jsonschema.ValidationError as e:
            raise _error(400, "schema", e.message)
        ds = dataset_or_404(s.dataset)
        with s.lock:
            for demo in body["demos"]:
                image_id = demo["imageId"]
                if image_id not in ds:
                    raise _error(404, "unknown-image",
                                 f"no image {image_id!r} in {s.dataset!r}")
                known = {o.id for o in ds[image_id].objects}
                for e in demo["edits"]:
                    if e["objectId"] not in known:
                        raise _error(409, "unknown-object",
                                     f"image {image_id!r} has no object "
                                     f"{e['objectId']!r}")
                acc = s.demos.setdefault(image_id, {})
                for e in demo["edits"]:
                    acc.setdefault(e["objectId"], set()).update(
                        Action[a] for a in e["actions"])
                if demo.get("searchLabel"):
                    s.search_labels[image_id] = demo["searchLabel"]
        return _demo_summary(s)

    @app.post("/sessions/{sid}/synthesize")
    def run_synthesis(sid: str, body: dict | None = None):
        s = session_or_404(sid)
        ds = dataset_or_404(s.dataset)
        if not any(s.demos.values()):
            raise _error(400, "empty-spec", "no demonstrated edits in session")
        if not s.lock.acquire(blocking=False):
            raise _error(409, "busy", "synthesis already running for session")
        try:
            by_image = {i: {o.id: o for o in ds[i].objects} for i in s.demos}
            spec = Spec(
                {i: frozenset(ds[i].objects) for i in s.demos},
                {i: {by_image[i][oid]:
                     tuple(sorted(acts, key=_ACTION_RANK.__getitem__))
                     for oid, acts in per_obj.items() if acts}
                 for i, per_obj in s.demos.items()},
            )
            overrides = body or {}
            config = SearchConfig(
                budget_s=float(overrides.get("budget_s", budget_s)),
                max_size=int(overrides.get("max_size", max_size)))
            try:
                program, report = synthesize(spec, config)
            except SynthesisTimeout as e:
                raise _error(504, "timeout", str(e))
            except SynthesisFailure as e:
                raise _error(400, "no-program", str(e))
            s.program = program
            s.program_text = program_to_text(program)
            s.report = report.to_dict()
            return {"program": s.program_text, "report": s.report}
        finally:
            s.lock.release()

    @app.get("/sessions/{sid}/program")
    def get_program(sid: str):
        s = session_or_404(sid)
        return {"program": s.program_text, "report": s.report}

    @app.post("/sessions/{sid}/apply")
    def run_apply(sid: str):
        s = session_or_404(sid)
        if s.program is None:
            raise _error(400, "no-program", "synthesize before applying")
        ds = dataset_or_404(s.dataset)
        out_dir = out_root / s.id
        out_dir.mkdir(exist_ok=True)
        results = []
        with s.lock:
            for image_id, ann in sorted(ds.items()):
                edit = eval_program(s.program, ann.objects)
                src = root / s.dataset / (ann.image_path or f"{image_id}.png")
                entry = {
                    "imageId": image_id,
                    "edits": [{"objectId": o.id,
                               "actions": [a.name for a in acts]}
                              for o, acts in sorted(edit.items(),
                                                    key=lambda kv: kv[0].id)],
                }
                if src.exists():
                    out_path = out_dir / src.name
                    save_image(apply_edit(load_image(src), ann.objects, edit),
                               out_path)
                    entry["outputUrl"] = f"/outputs/{s.id}/{src.name}"
                results.append(entry)
            s.results = results
        return {"results": results}

    return app
