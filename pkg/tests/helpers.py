"""Shared random generators for the property suites.

Everything is driven by an explicit random.Random so failures replay
from the printed seed.
"""

from __future__ import annotations

import random

from batchlens.dsl import (
    All,
    Builtin,
    Complement,
    Filter,
    Find,
    Intersect,
    Is,
    Union,
)
from batchlens.symbolic import (
    BoundingBox,
    Object,
    SymbolicImage,
    make_text_object,
)

_TYPES = ("car", "person", "cat", "bicycle", "guitar")
_WORDS = ("total", "tax", "coffee", "3.50", "555-301-4422", "stop")


def random_box(rng: random.Random, span: int = 100) -> BoundingBox:
    left = rng.randrange(0, span - 2)
    top = rng.randrange(0, span - 2)
    return BoundingBox(left, rng.randrange(left + 1, span),
                       top, rng.randrange(top + 1, span))


def random_object(rng: random.Random, oid: str, image_id: str = "") -> Object:
    kind = rng.randrange(3)
    box = random_box(rng)
    if kind == 0:
        props = {"objectType": "face"}
        if rng.random() < 0.8:
            props["faceId"] = rng.randrange(4)
        for attr in ("Smiling", "EyesOpen", "MouthOpen"):
            if rng.random() < 0.7:
                props[attr] = rng.random() < 0.5
        if rng.random() < 0.6:
            lo = rng.randrange(5, 40)
            props["ageLow"] = lo
            props["ageHigh"] = lo + rng.randrange(0, 12)
        return Object(oid, props, box, image_id)
    if kind == 1:
        return make_text_object(oid, rng.choice(_WORDS), box, image_id)
    return Object(oid, {"objectType": rng.choice(_TYPES)}, box, image_id)


def random_image(rng: random.Random, n: int | None = None,
                 image_id: str = "") -> SymbolicImage:
    if n is None:
        n = rng.randrange(1, 7)
    return SymbolicImage(random_object(rng, f"o{i}", image_id) for i in range(n))


def random_extractor(rng: random.Random, preds, depth: int = 3):
    """Random well-formed extractor over the given predicate pool."""
    if depth <= 1 or rng.random() < 0.3:
        return All() if rng.random() < 0.2 else Is(rng.choice(preds))
    pick = rng.randrange(5)
    if pick == 0:
        return Complement(random_extractor(rng, preds, depth - 1))
    if pick == 1:
        return Union(random_extractor(rng, preds, depth - 1),
                     random_extractor(rng, preds, depth - 1))
    if pick == 2:
        return Intersect(random_extractor(rng, preds, depth - 1),
                         random_extractor(rng, preds, depth - 1))
    if pick == 3:
        return Find(random_extractor(rng, preds, depth - 1),
                    rng.choice(preds), rng.choice(tuple(Builtin)))
    return Filter(random_extractor(rng, preds, depth - 1), rng.choice(preds))
