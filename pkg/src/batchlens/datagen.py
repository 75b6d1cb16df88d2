"""Bundled synthetic datasets for the three benchmark domains.

Each builder returns deterministic annotations for one dataset; geometry
is hand-designed so the benchmark tasks are discriminating (shortcut
programs fail on at least one image).  A small raster is rendered for
every image so apply/serve have something to edit.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import numpy as np

from .annotations import AnnotationFile, annotation_to_dict
from .raster import save_image
from .symbolic import BoundingBox, Object, SymbolicImage, make_text_object


def _obj(image_id, oid, otype, box, **props):
    return Object(oid, {"objectType": otype, **props},
                  BoundingBox(box[0], box[1], box[2], box[3]), image_id)


def _face(image_id, oid, box, **props):
    return _obj(image_id, oid, "face", box, **props)


def _text(image_id, oid, body, box):
    return make_text_object(oid, body, BoundingBox(*box), image_id)


# -- objects domain (street scenes, ~4 objects per image) -----------------

def build_objects() -> dict[str, list[Object]]:
    d = {}
    d["o1"] = [
        _obj("o1", "car1", "car", (10, 70, 60, 100)),
        _text("o1", "plate1", "kx319", (40, 62, 82, 94)),
        _face("o1", "face1", (16, 30, 64, 78), EyesOpen=True),
        _obj("o1", "person1", "person", (90, 110, 20, 60)),
        _obj("o1", "bike1", "bicycle", (88, 114, 58, 96)),
    ]
    d["o2"] = [
        _obj("o2", "guitar1", "guitar", (30, 55, 70, 100)),
        _face("o2", "face2", (34, 48, 40, 56), EyesOpen=True),
        _obj("o2", "person2", "person", (100, 130, 30, 90)),
        # leaning against a wall, so not below anyone
        _obj("o2", "bike2", "bicycle", (10, 40, 10, 34)),
        _obj("o2", "cat2", "cat", (70, 95, 95, 115)),
    ]
    d["o3"] = [
        _obj("o3", "car3", "car", (20, 90, 50, 110)),
        _text("o3", "sign3", "taxi", (40, 70, 60, 74)),
        _face("o3", "face3", (110, 126, 20, 36), EyesOpen=True),
        _obj("o3", "person3", "person", (96, 120, 30, 72)),
        _obj("o3", "bike3", "bicycle", (95, 125, 70, 108)),
    ]
    d["o4"] = [
        _obj("o4", "cat3", "cat", (10, 40, 80, 110)),
        _obj("o4", "cat4", "cat", (50, 80, 78, 108)),
        _obj("o4", "guitar2", "guitar", (100, 130, 30, 70)),
        _face("o4", "face4", (105, 125, 80, 100), EyesOpen=False),
        _obj("o4", "person4", "person", (135, 155, 40, 100)),
    ]
    d["o5"] = [
        _obj("o5", "car4", "car", (15, 75, 55, 105)),
        _face("o5", "face5", (22, 36, 60, 74), EyesOpen=False),
        _text("o5", "sign5", "stop", (100, 130, 10, 24)),
        _obj("o5", "bike4", "bicycle", (95, 125, 60, 98)),
    ]
    d["o6"] = [
        _obj("o6", "guitar3", "guitar", (20, 48, 60, 96)),
        _face("o6", "face7", (24, 38, 30, 46), EyesOpen=True),
        _obj("o6", "car5", "car", (70, 130, 60, 104)),
        _text("o6", "plate6", "kx742", (95, 118, 84, 96)),
        _obj("o6", "person5", "person", (135, 155, 20, 80)),
        _obj("o6", "cat5", "cat", (132, 158, 88, 112)),
    ]
    d["o7"] = [_obj("o7", "car6", "car", (40, 120, 30, 90))]
    d["o8"] = [
        _obj("o8", "cat6", "cat", (20, 60, 40, 80)),
        _obj("o8", "person6", "person", (90, 120, 20, 90)),
    ]
    return d


# -- wedding domain (group photos, ~10 objects per image) -----------------

# Per image: (faceId, smiling, eyesOpen, (ageLow, ageHigh), row, col).
# Bride has faceId 8, groom 34; guests 1-4 are adults, 5-6 children.
_ADULT = (25, 35)
_CHILD = (8, 12)

_WEDDING_LAYOUT = {
    "w1": [
        (8, True, True, _ADULT, 1, 2), (34, True, True, _ADULT, 1, 3),
        (1, True, False, _ADULT, 0, 0), (2, False, True, _ADULT, 0, 1),
        (3, True, True, _ADULT, 0, 3), (4, False, False, _ADULT, 0, 4),
        (5, True, True, _CHILD, 1, 0), (6, False, True, _CHILD, 1, 4),
    ],
    "w2": [
        (8, False, True, _ADULT, 1, 1), (34, True, True, _ADULT, 0, 2),
        (1, True, True, _ADULT, 0, 0), (2, True, False, _ADULT, 0, 4),
        (3, False, True, _ADULT, 1, 3), (5, True, False, _CHILD, 1, 0),
        (6, True, True, _CHILD, 1, 4), (4, True, True, _ADULT, 0, 3),
    ],
    "w3": [  # no groom in this shot
        (8, True, True, _ADULT, 1, 4), (1, False, False, _ADULT, 0, 1),
        (2, True, True, _ADULT, 0, 2), (3, True, False, _ADULT, 1, 0),
        (4, False, True, _ADULT, 0, 3), (5, False, True, _CHILD, 1, 2),
    ],
    "w4": [
        (8, True, False, _ADULT, 0, 1), (34, False, True, _ADULT, 1, 2),
        (1, True, True, _ADULT, 1, 0), (2, False, False, _ADULT, 0, 3),
        (4, True, True, _ADULT, 1, 4), (6, True, True, _CHILD, 0, 4),
        (3, True, True, _ADULT, 0, 0), (5, True, True, _CHILD, 1, 3),
    ],
    "w5": [
        (8, True, True, _ADULT, 0, 2), (34, True, False, _ADULT, 0, 3),
        (1, False, True, _ADULT, 1, 1), (3, False, True, _ADULT, 1, 4),
        (6, False, False, _CHILD, 1, 0), (2, True, True, _ADULT, 0, 0),
    ],
    "w6": [
        (8, False, False, _ADULT, 1, 0), (34, True, True, _ADULT, 1, 1),
        (2, True, True, _ADULT, 0, 0), (3, True, True, _ADULT, 0, 2),
        (4, False, True, _ADULT, 1, 3), (5, True, True, _CHILD, 0, 4),
        (1, True, False, _ADULT, 0, 3), (6, True, True, _CHILD, 1, 4),
    ],
}


def build_wedding() -> dict[str, list[Object]]:
    d = {}
    for image_id, faces in _WEDDING_LAYOUT.items():
        rng = random.Random(f"wedding/{image_id}")
        objs = []
        for fid, smiling, eyes, (lo, hi), row, col in faces:
            # jitter keeps lefts and tops pairwise distinct per image
            left = 12 + 28 * col + rng.randrange(0, 5)
            top = 14 + 34 * row + rng.randrange(0, 5)
            objs.append(_face(image_id, f"face{fid}", (left, left + 14, top, top + 14),
                              faceId=fid, Smiling=smiling, EyesOpen=eyes,
                              ageLow=lo, ageHigh=hi))
        objs.append(_obj(image_id, "guestA", "person", (10, 40, 86, 118)))
        objs.append(_obj(image_id, "guestB", "person", (110, 145, 84, 118)))
        d[image_id] = objs
    return d


# -- receipts domain (~59 text objects per image) -------------------------

_ITEM_WORDS = ["coffee", "tea", "milk", "bread", "eggs", "rice",
               "soap", "salt", "sugar", "butter", "jam", "flour"]
_PRICES = ["0.99", "1.25", "2.00", "3.50", "4.75", "5.10", "6.40", "12.35"]
_PHONES = ["555-301-4422", "555-887-2031", "555-410-9956",
           "555-262-7718", "555-730-5144"]


def build_receipts() -> dict[str, list[Object]]:
    d = {}
    for idx in range(5):
        image_id = f"r{idx + 1}"
        rng = random.Random(f"receipts/{image_id}")
        objs = []
        oid = 0

        def put(body, x, row):
            nonlocal oid
            left = x + rng.randrange(0, 3)
            top = 8 + 9 * row + rng.randrange(0, 3)
            width = max(8, 5 * len(body))
            objs.append(_text(image_id, f"t{oid}", body,
                              (left, left + width, top, top + 7)))
            oid += 1

        put("corner", 10, 0)
        put("market", 55, 0)
        put(_PHONES[idx], 10, 1)
        items = [(w, _PRICES[(i + idx) % len(_PRICES)])
                 for i, w in enumerate(_ITEM_WORDS * 2)]
        rng.shuffle(items)
        for i, (word, price) in enumerate(items):
            put(word, 10, 2 + i)
            put(price, 95, 2 + i)
        put("subtotal", 10, 26)
        put(_PRICES[(idx + 3) % len(_PRICES)], 95, 26)
        put("tax", 10, 27)
        put("0.99", 95, 27)
        put("total", 10, 28)
        put("12.35", 95, 28)
        put("thank", 10, 29)
        put("you", 45, 29)
        d[image_id] = objs
    return d


# -- recital scenes (violin player, bystander, spare instrument) ----------

def build_recital() -> dict[str, list[Object]]:
    return {
        "ra": [
            _face("ra", "face0", (10, 20, 2, 12)),
            _obj("ra", "violin0", "violin", (10, 20, 22, 30)),
            _face("ra", "face1", (60, 70, 25, 35)),
            _obj("ra", "violin1", "violin", (30, 40, 0, 8)),
        ],
        "rb": [
            _face("rb", "face0", (30, 40, 4, 14)),
            _obj("rb", "violin0", "violin", (30, 40, 20, 28)),
            _face("rb", "face1", (5, 15, 30, 40)),
            _obj("rb", "violin2", "violin", (20, 28, 0, 8)),
        ],
        "rc": [
            _face("rc", "face0", (50, 60, 6, 16)),
            _obj("rc", "violin0", "violin", (50, 60, 24, 32)),
        ],
    }


DATASETS = {
    "objects": build_objects,
    "wedding": build_wedding,
    "receipts": build_receipts,
    "recital": build_recital,
}

_CANVAS = {"objects": (160, 120), "wedding": (160, 124),
           "receipts": (150, 290), "recital": (90, 50)}

_TYPE_COLOR = {
    "car": (70, 110, 190), "bicycle": (60, 170, 90), "person": (180, 140, 90),
    "cat": (200, 120, 60), "guitar": (140, 80, 160), "face": (230, 190, 150),
    "text": (40, 40, 40), "violin": (160, 100, 40),
}


def render_image(objects, size) -> np.ndarray:
    """Flat synthetic raster: one filled rectangle per object."""
    width, height = size
    img = np.full((height, width, 3), 235, dtype=np.uint8)
    for o in sorted(objects, key=lambda o: -o.bbox.area):
        color = _TYPE_COLOR.get(o.object_type, (120, 120, 120))
        b = o.bbox
        img[b.top:b.bottom, b.left:b.right] = color
        img[b.top:b.bottom, b.left] = (15, 15, 15)
        img[b.top, b.left:b.right] = (15, 15, 15)
    return img


def write_dataset(name: str, out_dir: str | Path) -> list[Path]:
    """Materialize one dataset as *.ann.json plus *.png files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for image_id, objects in DATASETS[name]().items():
        png = out / f"{image_id}.png"
        save_image(render_image(objects, _CANVAS[name]), png)
        ann = AnnotationFile(image_id, SymbolicImage(objects), str(png.name))
        path = out / f"{image_id}.ann.json"
        path.write_text(json.dumps(annotation_to_dict(ann), indent=2) + "\n")
        written.append(path)
    return written


def write_all(root: str | Path) -> None:
    for name in DATASETS:
        write_dataset(name, Path(root) / name)


def dataset_images(name: str) -> dict[str, SymbolicImage]:
    return {image_id: SymbolicImage(objs)
            for image_id, objs in DATASETS[name]().items()}
