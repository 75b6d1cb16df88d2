"""Benchmark harness: iterative demonstration protocol and ablations.

A task is solved when a synthesized program induces the exact ground
truth edit on every dataset image.  Demonstrations are grown one
counterexample image at a time, starting from the sparsest image.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .datagen import dataset_images
from .dsl import Action, Extractor, Program, parse_extractor, program_to_text
from .interp import Edit, context, eval_program
from .symbolic import SymbolicImage
from .synth import (
    SearchConfig,
    Spec,
    SynthesisFailure,
    SynthesisTimeout,
    synthesize,
)

MAX_ROUNDS = 10


@dataclass(frozen=True)
class BenchmarkTask:
    task_id: str
    domain: str
    program_text: str
    action: Action
    description: str

    @property
    def program(self) -> Extractor:
        return parse_extractor(self.program_text)


def _t(task_id, domain, program, action, description):
    return BenchmarkTask(task_id, domain, program, Action[action], description)


TASK_SUITE: tuple[BenchmarkTask, ...] = (
    _t("wed1", "wedding", "Intersect(Is(Smiling), Is(EyesOpen))", "Brighten",
       "brighten faces that are smiling with eyes open"),
    _t("wed2", "wedding", "Find(Is(FaceObject), FaceObject, GetAbove)", "Blur",
       "blur every face that appears above another face"),
    _t("wed3", "wedding", "Union(Is(Face(8)), Is(Face(34)))", "Crop",
       "crop the couple"),
    _t("wed4", "wedding", "Intersect(Is(FaceObject), Complement(Is(Face(8))))",
       "Blur", "blur every face except the bride"),
    _t("wed5", "wedding",
       "Find(Find(Is(FaceObject), FaceObject, GetRight), FaceObject, GetRight)",
       "Blackout", "black out faces two or more positions from the left"),
    _t("wed6", "wedding",
       "Intersect(Is(FaceObject), Complement(Intersect(Is(Smiling), Is(EyesOpen))))",
       "Blur", "blur faces not smiling with eyes open"),
    _t("wed8", "wedding", "Union(Is(Face(8)), Intersect(Is(Smiling), Is(EyesOpen)))",
       "Sharpen", "sharpen the bride plus everyone smiling with eyes open"),
    _t("wed10", "wedding",
       "Union(Intersect(Is(FaceObject), Complement(Is(Smiling))), Is(BelowAge(18)))",
       "Blur", "blur non-smiling faces and all children"),
    _t("wed11", "wedding",
       "Union(Find(Is(Face(8)), FaceObject, GetRight), Is(Face(8)))",
       "Crop", "crop the bride and her right-hand neighbor"),
    _t("rec17", "receipts", "Union(Is(Price), Is(PhoneNumber))", "Blackout",
       "black out prices and phone numbers"),
    _t("rec18", "receipts", "Find(Is(Price), TextObject, GetLeft)", "Recolor",
       "recolor the text left of each price"),
    _t("rec19", "receipts", "Intersect(Is(TextObject), Complement(Is(Price)))",
       "Blur", "blur all text except prices"),
    _t("rec20", "receipts", 'Find(Is(Text("total")), Price, GetRight)', "Brighten",
       "brighten the total amount"),
    _t("rec21", "receipts", 'Find(Is(Text("total")), TextObject, GetRight)',
       "Blackout", "black out the text right of the total label"),
    _t("rec22", "receipts", 'Find(Is(Text("tax")), TextObject, GetAbove)',
       "Recolor", "recolor the line above the tax label"),
    _t("rec24", "receipts",
       "Intersect(Is(TextObject), Complement(Union(Is(Price), Is(PhoneNumber))))",
       "Blur", "blur text that is neither a price nor a phone number"),
    _t("rec27", "receipts",
       'Intersect(Is(TextObject), Complement(Union(Is(Text("total")), Is(Price))))',
       "Blur", "blur text except prices and the total label"),
    _t("rec28", "receipts",
       'Intersect(Is(Price), Complement(Find(Is(Text("total")), TextObject, GetRight)))',
       "Blackout", "black out every price except the total amount"),
    _t("obj30", "objects", "Complement(Is(Object(car)))", "Blur",
       "blur everything except cars"),
    _t("obj31", "objects", "Filter(Is(Object(car)), FaceObject)", "Blur",
       "blur faces inside cars"),
    _t("obj32", "objects", "Filter(Is(Object(car)), TextObject)", "Blackout",
       "black out text on cars"),
    _t("obj33", "objects", "Find(Is(TextObject), Object(car), GetParents)", "Crop",
       "crop cars that carry text"),
    _t("obj34", "objects", "Union(Is(Object(cat)), Is(FaceObject))", "Sharpen",
       "sharpen cats and faces"),
    _t("obj35", "objects",
       "Union(Is(Object(cat)), Intersect(Is(FaceObject), Is(EyesOpen)))",
       "Brighten", "brighten cats and open-eyed faces"),
    _t("obj36", "objects", "Find(Is(Object(guitar)), FaceObject, GetAbove)",
       "Blur", "blur the face above each guitar"),
    _t("obj38", "objects", "Union(Is(Object(car)), Is(Object(bicycle)))", "Crop",
       "crop cars and bicycles"),
    _t("obj39", "objects", "Find(Is(Object(person)), Object(bicycle), GetBelow)",
       "Recolor", "recolor the bicycle below each person"),
    _t("obj41", "objects", "Complement(Union(Is(Object(car)), Is(Object(bicycle))))",
       "Blur", "blur everything except vehicles"),
    _t("obj43", "objects",
       "Union(Union(Is(Object(car)), Is(Object(bicycle))), Is(Object(person)))",
       "Blackout", "black out cars, bicycles, and people"),
    _t("obj45", "objects",
       "Union(Is(Object(guitar)), Find(Is(Object(guitar)), FaceObject, GetAbove))",
       "Crop", "crop guitars together with their players' faces"),
)


def tasks_to_json(tasks) -> dict:
    return {"schema": 1, "tasks": [
        {"id": t.task_id, "domain": t.domain, "program": t.program_text,
         "action": t.action.name, "description": t.description}
        for t in tasks]}


def tasks_from_json(data: dict) -> tuple[BenchmarkTask, ...]:
    return tuple(_t(t["id"], t["domain"], t["program"], t["action"],
                    t.get("description", "")) for t in data["tasks"])


def load_tasks(path: str | Path) -> tuple[BenchmarkTask, ...]:
    return tasks_from_json(json.loads(Path(path).read_text()))


@dataclass
class TaskReport:
    task_id: str
    domain: str
    solved: bool = False
    rounds: int = 0
    demo_images: list[str] = field(default_factory=list)
    round_times: list[float] = field(default_factory=list)
    program_text: str | None = None
    enqueued: int = 0
    dequeued: int = 0
    pruned_inconsistent: int = 0
    pruned_reducible: int = 0
    failure: str | None = None
    flags: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": self.task_id, "domain": self.domain, "solved": self.solved,
            "rounds": self.rounds, "demoImages": self.demo_images,
            "roundTimes": [round(t, 4) for t in self.round_times],
            "program": self.program_text,
            "enqueued": self.enqueued, "dequeued": self.dequeued,
            "prunedInconsistent": self.pruned_inconsistent,
            "prunedReducible": self.pruned_reducible,
            "failure": self.failure, "flags": self.flags,
        }


def ground_truth_edits(task: BenchmarkTask,
                       images: dict[str, SymbolicImage]) -> dict[str, Edit]:
    prog = task.program
    out: dict[str, Edit] = {}
    for image_id, image in images.items():
        out[image_id] = {o: (task.action,) for o in context(image).eval(prog)}
    return out


def _config_flags(config: SearchConfig) -> dict:
    return {"goalInference": config.enable_goal_inference,
            "partialEval": config.enable_partial_eval,
            "rewrites": config.enable_rewrites}


def run_task(task: BenchmarkTask, config: SearchConfig | None = None,
             images: dict[str, SymbolicImage] | None = None,
             max_rounds: int = MAX_ROUNDS) -> TaskReport:
    """Run the iterative protocol for one task and report the outcome."""
    config = config or SearchConfig()
    if images is None:
        images = dataset_images(task.domain)
    gt = ground_truth_edits(task, images)
    report = TaskReport(task.task_id, task.domain, flags=_config_flags(config))

    # seed with the sparsest image; ties broken lexicographically
    seed = min(images, key=lambda i: (len(images[i]), i))
    demoed = [seed]

    for _ in range(max_rounds):
        report.rounds += 1
        spec = Spec({i: frozenset(images[i]) for i in demoed},
                    {i: gt[i] for i in demoed})
        start = time.monotonic()
        try:
            program, search = synthesize(spec, config)
        except SynthesisFailure as e:
            report.round_times.append(time.monotonic() - start)
            report.demo_images = demoed
            report.failure = ("timeout" if isinstance(e, SynthesisTimeout)
                              else "exhausted")
            return report
        report.round_times.append(search.elapsed_s)
        report.enqueued += search.enqueued
        report.dequeued += search.dequeued
        report.pruned_inconsistent += search.pruned_inconsistent
        report.pruned_reducible += search.pruned_reducible
        report.program_text = search.program_text

        mismatch = None
        for image_id in sorted(images):
            if eval_program(program, images[image_id]) != gt[image_id]:
                mismatch = image_id
                break
        if mismatch is None:
            report.solved = True
            report.demo_images = demoed
            return report
        demoed = demoed + [mismatch]
    report.demo_images = demoed[:-1]
    report.failure = "rounds"
    return report


@dataclass
class SuiteReport:
    reports: list[TaskReport]
    elapsed_s: float
    flags: dict

    @property
    def solved(self) -> set[str]:
        return {r.task_id for r in self.reports if r.solved}

    @property
    def dequeued(self) -> int:
        return sum(r.dequeued for r in self.reports)

    def per_domain(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for r in self.reports:
            solved, total = out.setdefault(r.domain, [0, 0])
            out[r.domain] = [solved + (1 if r.solved else 0), total + 1]
        return {d: (s, t) for d, (s, t) in out.items()}

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "elapsed_s": round(self.elapsed_s, 4),
            "flags": self.flags,
            "solved": len(self.solved),
            "total": len(self.reports),
            "dequeued": self.dequeued,
            "perDomain": {d: {"solved": s, "total": t}
                          for d, (s, t) in sorted(self.per_domain().items())},
            "tasks": [r.to_dict() for r in self.reports],
        }


def run_suite(tasks=TASK_SUITE, config: SearchConfig | None = None,
              max_rounds: int = MAX_ROUNDS) -> SuiteReport:
    config = config or SearchConfig()
    start = time.monotonic()
    cache: dict[str, dict[str, SymbolicImage]] = {}
    reports = []
    for task in tasks:
        if task.domain not in cache:
            cache[task.domain] = dataset_images(task.domain)
        reports.append(run_task(task, config, cache[task.domain], max_rounds))
    return SuiteReport(reports, time.monotonic() - start, _config_flags(config))


# The three single-feature ablations of the search (plus the full config).
ABLATIONS = {
    "full": {},
    "no_goal_inference": {"enable_goal_inference": False},
    "no_partial_eval": {"enable_partial_eval": False},
    "no_rewrites": {"enable_rewrites": False},
}


def run_ablations(tasks=TASK_SUITE, base: SearchConfig | None = None,
                  max_rounds: int = MAX_ROUNDS) -> dict[str, SuiteReport]:
    base = base or SearchConfig()
    out = {}
    for name, overrides in ABLATIONS.items():
        cfg = SearchConfig(budget_s=base.budget_s, max_size=base.max_size,
                           enable_goal_inference=base.enable_goal_inference,
                           enable_partial_eval=base.enable_partial_eval,
                           enable_rewrites=base.enable_rewrites,
                           age_thresholds=base.age_thresholds)
        for k, v in overrides.items():
            setattr(cfg, k, v)
        out[name] = run_suite(tasks, cfg, max_rounds)
    return out
