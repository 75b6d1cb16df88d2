"""Annotation and demonstration JSON IO.

Annotation files carry the symbolic objects for one raster image; demo
files carry demonstrated edits over those objects.  Both formats are
versioned ("schema": 1) and validated structurally against the bundled
JSON schemas before any semantic checks run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

import jsonschema

from .dsl import Action
from .interp import Edit

_ACTION_RANK = {a: i for i, a in enumerate(Action)}
from .symbolic import (
    BoundingBox,
    IngestionError,
    Object,
    SymbolicImage,
    is_phone_number,
    is_price,
)


class AnnotationParseError(IngestionError):
    """Raised when a file is not valid JSON or fails schema validation."""


class UnknownObjectError(IngestionError):
    """Raised when a demo references an object id absent from its image."""


def _load_schema(name: str) -> dict:
    text = resources.files("batchlens.schemas").joinpath(name).read_text()
    return json.loads(text)


_ANNOTATION_SCHEMA = _load_schema("annotation.schema.json")
_DEMO_SCHEMA = _load_schema("demo.schema.json")


def _read_json(path: str | Path, schema: dict) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise AnnotationParseError(f"{path}: {e}") from e
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as e:
        raise AnnotationParseError(f"{path}: {e.message}") from e
    return data


@dataclass(frozen=True)
class AnnotationFile:
    """Symbolic annotation of one raster image."""

    image_id: str
    objects: SymbolicImage
    image_path: str | None = None

    @staticmethod
    def load(path: str | Path) -> "AnnotationFile":
        data = _read_json(path, _ANNOTATION_SCHEMA)
        return annotation_from_dict(data, source=str(path))

    def save(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(json.dumps(annotation_to_dict(self), indent=2) + "\n")


def annotation_from_dict(data: dict, source: str = "<annotation>") -> AnnotationFile:
    image_id = data["imageId"]
    objects = []
    seen: set[str] = set()
    for entry in data["objects"]:
        if entry["id"] in seen:
            raise AnnotationParseError(
                f"{source}: duplicate object id {entry['id']!r}")
        seen.add(entry["id"])
        b = entry["bbox"]
        try:
            bbox = BoundingBox(b["l"], b["r"], b["t"], b["b"])
            attrs = dict(entry["attrs"])
            body = attrs.get("textBody")
            if attrs.get("objectType") == "text" and isinstance(body, str):
                # derived text attributes are always recomputed at ingestion
                attrs["isPrice"] = is_price(body)
                attrs["isPhoneNumber"] = is_phone_number(body)
            objects.append(Object(entry["id"], attrs, bbox, image_id))
        except (IngestionError, ValueError) as e:
            raise AnnotationParseError(f"{source}: object {entry['id']!r}: {e}") from e
    return AnnotationFile(image_id, SymbolicImage(objects), data.get("imagePath"))


def annotation_to_dict(ann: AnnotationFile) -> dict:
    out: dict = {"schema": 1, "imageId": ann.image_id}
    if ann.image_path is not None:
        out["imagePath"] = ann.image_path
    out["objects"] = [
        {
            "id": o.id,
            "bbox": {"l": o.bbox.left, "r": o.bbox.right,
                     "t": o.bbox.top, "b": o.bbox.bottom},
            "attrs": dict(sorted(o.props.items())),
        }
        for o in sorted(ann.objects, key=lambda o: o.id)
    ]
    return out


@dataclass(frozen=True)
class Demo:
    """One demonstrated image: its edits and an optional search label."""

    image_id: str
    edits: dict[str, tuple[Action, ...]]
    search_label: str | None = None


@dataclass(frozen=True)
class DemoFile:
    demos: tuple[Demo, ...]

    @staticmethod
    def load(path: str | Path) -> "DemoFile":
        data = _read_json(path, _DEMO_SCHEMA)
        return demos_from_dict(data)

    def save(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(json.dumps(demos_to_dict(self), indent=2) + "\n")


def demos_from_dict(data: dict) -> DemoFile:
    demos = []
    for d in data["demos"]:
        edits: dict[str, set[Action]] = {}
        for e in d["edits"]:
            acts = edits.setdefault(e["objectId"], set())
            acts.update(Action[name] for name in e["actions"])
        demos.append(Demo(
            d["imageId"],
            {oid: tuple(sorted(acts, key=_ACTION_RANK.__getitem__))
             for oid, acts in edits.items()},
            d.get("searchLabel"),
        ))
    return DemoFile(tuple(demos))


def demos_to_dict(df: DemoFile) -> dict:
    return {
        "schema": 1,
        "demos": [
            {
                "imageId": d.image_id,
                **({"searchLabel": d.search_label} if d.search_label else {}),
                "edits": [
                    {"objectId": oid, "actions": [a.name for a in acts]}
                    for oid, acts in sorted(d.edits.items())
                ],
            }
            for d in df.demos
        ],
    }


def resolve_demo(demo: Demo, ann: AnnotationFile) -> Edit:
    """Bind a demo's object ids against its annotation, producing an Edit."""
    if demo.image_id != ann.image_id:
        raise UnknownObjectError(
            f"demo targets image {demo.image_id!r}, annotation is {ann.image_id!r}")
    by_id = {o.id: o for o in ann.objects}
    edit: Edit = {}
    for oid, acts in demo.edits.items():
        if oid not in by_id:
            raise UnknownObjectError(
                f"demo for {demo.image_id!r} references unknown object {oid!r}")
        if acts:
            edit[by_id[oid]] = acts
    return edit


def load_demo_edits(
    annotations: dict[str, AnnotationFile], demo_file: DemoFile
) -> dict[str, Edit]:
    """Resolve every demo; duplicate demos for one image union their actions."""
    merged: dict[str, dict[str, set[Action]]] = {}
    for demo in demo_file.demos:
        if demo.image_id not in annotations:
            raise UnknownObjectError(
                f"demo references unknown image {demo.image_id!r}")
        acc = merged.setdefault(demo.image_id, {})
        for oid, acts in demo.edits.items():
            acc.setdefault(oid, set()).update(acts)
    out: dict[str, Edit] = {}
    for image_id, per_obj in merged.items():
        demo = Demo(image_id, {
            oid: tuple(sorted(acts, key=_ACTION_RANK.__getitem__))
            for oid, acts in per_obj.items()})
        out[image_id] = resolve_demo(demo, annotations[image_id])
    return out


# -- detector plugins -----------------------------------------------------

# A detector turns a raster image path into an annotation.  The default
# backend reads a sidecar JSON file, which doubles as a deterministic
# oracle for tests; real vision models can register under other names.
Detector = Callable[[str], AnnotationFile]

_DETECTORS: dict[str, Detector] = {}


def register_detector(name: str, fn: Detector) -> None:
    _DETECTORS[name] = fn


def get_detector(name: str) -> Detector:
    try:
        return _DETECTORS[name]
    except KeyError:
        raise KeyError(
            f"unknown detector {name!r}; registered: {sorted(_DETECTORS)}") from None


def _sidecar_detector(image_path: str) -> AnnotationFile:
    path = Path(image_path)
    sidecar = path.with_suffix(".json")
    if not sidecar.exists():
        raise AnnotationParseError(f"no sidecar annotation for {image_path}")
    return AnnotationFile.load(sidecar)


register_detector("sidecar", _sidecar_detector)


def load_dataset(directory: str | Path) -> dict[str, AnnotationFile]:
    """Load every *.ann.json annotation in a directory, keyed by image id."""
    out: dict[str, AnnotationFile] = {}
    for path in sorted(Path(directory).glob("*.ann.json")):
        ann = AnnotationFile.load(path)
        if ann.image_id in out:
            raise AnnotationParseError(
                f"{path}: duplicate image id {ann.image_id!r}")
        out[ann.image_id] = ann
    return out
