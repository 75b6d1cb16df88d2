"""Synthesizing an edit program from two demonstrations.

The recital dataset has a violin player in every image plus background
faces and spare instruments.  We demonstrate "crop the player's face and
violin" on two images and let the synthesizer find a program that
generalizes, then apply it across the whole dataset.
"""

import tempfile
from pathlib import Path

from batchlens.annotations import load_dataset, load_demo_edits
from batchlens.annotations import Demo, DemoFile
from batchlens.datagen import dataset_images, write_dataset
from batchlens.dsl import Action
from batchlens.interp import eval_program
from batchlens.raster import apply_edit, load_image, save_image
from batchlens.synth import SearchConfig, Spec, synthesize

workdir = Path(tempfile.mkdtemp(prefix="batchlens-demo-"))
write_dataset("recital", workdir)
dataset = load_dataset(workdir)
images = dataset_images("recital")

# two demonstrations: crop face0 and violin0 in ra and rb
demos = DemoFile((
    Demo("ra", {"face0": (Action.Crop,), "violin0": (Action.Crop,)}),
    Demo("rb", {"face0": (Action.Crop,), "violin0": (Action.Crop,)}),
))
edits = load_demo_edits(dataset, demos)

spec = Spec({i: frozenset(images[i]) for i in edits},
            {i: edits[i] for i in edits})
program, report = synthesize(spec, SearchConfig(budget_s=60))

print("synthesized:", report.program_text)
print(f"explored {report.dequeued} candidates in {report.elapsed_s:.2f}s")
print()

# the program transfers to the image that was never demonstrated
for image_id, ann in sorted(dataset.items()):
    edit = eval_program(program, images[image_id])
    targets = sorted(o.id for o in edit)
    print(f"{image_id}: edits {targets}")
    raster = load_image(workdir / ann.image_path)
    out = apply_edit(raster, images[image_id], edit)
    save_image(out, workdir / f"{image_id}.cropped.png")
    print(f"    {raster.shape} -> {out.shape}, "
          f"wrote {image_id}.cropped.png")

print()
print("outputs under", workdir)
