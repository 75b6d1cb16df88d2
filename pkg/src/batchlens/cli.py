"""Command line front end: synth, apply, search, bench, serve, datasets."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import datagen
from .annotations import AnnotationFile, DemoFile, load_dataset, load_demo_edits
from .bench import (
    TASK_SUITE,
    load_tasks,
    run_ablations,
    run_suite,
)
from .dsl import SyntaxParseError, parse_program, program_to_text
from .interp import eval_program
from .raster import apply_edit, load_image, save_image
from .symbolic import IngestionError
from .synth import SearchConfig, Spec, SynthesisFailure, SynthesisTimeout, synthesize

_ERRORS = (IngestionError, SyntaxParseError, SynthesisFailure,
           ValueError, KeyError, OSError)


def _fail(category: str, message: str) -> "SystemExit":
    click.echo(f"error[{category}]: {message}", err=True)
    return SystemExit(1)


@click.group()
def main():
    """Batch image editing from demonstrations."""


def _search_config(budget, max_size, ablation) -> SearchConfig:
    cfg = SearchConfig(budget_s=budget, max_size=max_size)
    for flag in filter(None, (ablation or "").split(",")):
        name = f"enable_{flag.strip()}"
        if not hasattr(cfg, name):
            raise _fail("config", f"unknown ablation flag {flag.strip()!r}")
        setattr(cfg, name, False)
    return cfg


@main.command()
@click.option("--demos", "demos_path", required=True, type=click.Path(exists=True))
@click.option("--annotations", "ann_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--budget", default=180.0, show_default=True)
@click.option("--max-size", default=30, show_default=True)
@click.option("--report", "report_path", type=click.Path(), default=None,
              help="Also write the machine-readable search report.")
def synth(demos_path, ann_dir, out_path, budget, max_size, report_path):
    """Synthesize a program from demonstrated edits."""
    try:
        anns = load_dataset(ann_dir)
        edits = load_demo_edits(anns, DemoFile.load(demos_path))
        spec = Spec({i: frozenset(anns[i].objects) for i in edits}, edits)
        program, report = synthesize(spec, _search_config(budget, max_size, None))
    except SynthesisTimeout as e:
        raise _fail("timeout", str(e))
    except _ERRORS as e:
        raise _fail("synth", str(e))
    Path(out_path).write_text(program_to_text(program) + "\n")
    if report_path:
        Path(report_path).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    click.echo(program_to_text(program))


def _load_program(path):
    return parse_program(Path(path).read_text())


def _raster_path(ann: AnnotationFile, images_dir: Path) -> Path:
    name = ann.image_path or f"{ann.image_id}.png"
    return images_dir / name


@main.command()
@click.option("--program", "program_path", required=True, type=click.Path(exists=True))
@click.option("--images", "images_dir", required=True, type=click.Path(exists=True))
@click.option("--annotations", "ann_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
def apply(program_path, images_dir, ann_dir, out_dir):
    """Apply a program to every annotated image in a directory."""
    try:
        program = _load_program(program_path)
        anns = load_dataset(ann_dir)
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for image_id, ann in sorted(anns.items()):
            src = _raster_path(ann, Path(images_dir))
            img = load_image(src)
            edit = eval_program(program, ann.objects)
            save_image(apply_edit(img, ann.objects, edit), out / src.name)
            click.echo(f"{image_id}: {len(edit)} objects edited -> {out / src.name}")
    except _ERRORS as e:
        raise _fail("apply", str(e))


@main.command()
@click.option("--program", "program_path", required=True, type=click.Path(exists=True))
@click.option("--annotations", "ann_dir", required=True, type=click.Path(exists=True))
def search(program_path, ann_dir):
    """List images on which the program's extractors select anything."""
    try:
        program = _load_program(program_path)
        anns = load_dataset(ann_dir)
        for image_id, ann in sorted(anns.items()):
            if eval_program(program, ann.objects):
                click.echo(image_id)
    except _ERRORS as e:
        raise _fail("search", str(e))


@main.command()
@click.option("--tasks", "tasks_path", type=click.Path(exists=True), default=None,
              help="Task manifest JSON; defaults to the bundled 30-task suite.")
@click.option("--ablation", default=None,
              help="Comma list of features to disable "
                   "(goal_inference,partial_eval,rewrites), or 'sweep'.")
@click.option("--report", "report_path", required=True, type=click.Path())
@click.option("--budget", default=180.0, show_default=True)
@click.option("--max-size", default=30, show_default=True)
def bench(tasks_path, ablation, report_path, budget, max_size):
    """Run the benchmark protocol and write a JSON report."""
    try:
        tasks = load_tasks(tasks_path) if tasks_path else TASK_SUITE
        if ablation == "sweep":
            reports = run_ablations(tasks, SearchConfig(budget_s=budget,
                                                        max_size=max_size))
            payload = {name: rep.to_dict() for name, rep in reports.items()}
            solved = {name: rep.to_dict()["solved"] for name, rep in reports.items()}
        else:
            rep = run_suite(tasks, _search_config(budget, max_size, ablation))
            payload = rep.to_dict()
            solved = payload["solved"]
            for domain, counts in payload["perDomain"].items():
                click.echo(f"{domain}: {counts['solved']}/{counts['total']}")
    except _ERRORS as e:
        raise _fail("bench", str(e))
    Path(report_path).write_text(json.dumps(payload, indent=2) + "\n")
    click.echo(f"solved: {solved}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--datasets", "datasets_dir", type=click.Path(), default=None,
              help="Directory of dataset subdirectories; generated if missing.")
def serve(port, host, datasets_dir):
    """Start the HTTP annotation and synthesis service."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(datasets_dir)
    except _ERRORS as e:
        raise _fail("serve", str(e))
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--out", "out_dir", required=True, type=click.Path())
def datasets(out_dir):
    """Materialize the bundled synthetic datasets."""
    try:
        datagen.write_all(out_dir)
    except _ERRORS as e:
        raise _fail("datasets", str(e))
    for name in datagen.DATASETS:
        click.echo(f"{name}: {len(datagen.DATASETS[name]())} images")


if __name__ == "__main__":
    sys.exit(main())
