"""A quick run of the benchmark harness on a handful of tasks.

Each task is a ground-truth program; the harness plays the user, seeding
one demonstration on the sparsest image and adding a counterexample image
each round until the synthesized program matches everywhere.
"""

from batchlens.bench import TASK_SUITE, ground_truth_edits, run_task
from batchlens.datagen import dataset_images
from batchlens.synth import SearchConfig

PICKS = ("wed3", "rec20", "obj31", "obj39")

config = SearchConfig(budget_s=60)
for task in TASK_SUITE:
    if task.task_id not in PICKS:
        continue
    print(f"== {task.task_id} ({task.domain}): {task.description}")
    print(f"   target  {task.program_text} -> {task.action.value}")
    report = run_task(task, config)
    status = "solved" if report.solved else f"failed ({report.failure})"
    print(f"   {status} in {report.rounds} round(s), "
          f"demos {report.demo_images}, {report.dequeued} candidates")
    print(f"   learned {report.program_text}")

    # how much work did the edits actually involve?
    images = dataset_images(task.domain)
    gt = ground_truth_edits(task, images)
    touched = sum(len(e) for e in gt.values())
    print(f"   ground truth touches {touched} objects "
          f"across {len(images)} images")
    print()
