"""Deterministic raster kernels for the six edit actions.

All kernels operate on RGB8 arrays.  Non-crop actions touch only pixels
inside the (clipped) boxes; outputs are bit-exact for identical inputs,
so golden-checksum tests are stable across platforms.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np
from PIL import Image
from scipy.ndimage import convolve, uniform_filter

from .dsl import Action
from .interp import Edit
from .symbolic import BoundingBox, SymbolicImage

_SHARPEN_KERNEL = np.array([[0, -1, 0], [-1, 5, -1], [0, -1, 0]], dtype=np.float64)
_RECOLOR_TARGET = np.array([255.0, 0.0, 0.0])

# Non-crop actions in application order; Crop runs last because it
# changes geometry and would invalidate the other boxes.
ACTION_ORDER = (Action.Blur, Action.Blackout, Action.Sharpen,
                Action.Brighten, Action.Recolor, Action.Crop)


def _round(x: np.ndarray) -> np.ndarray:
    # Half-up rounding, then clamp to RGB8.
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def clip_box(box: BoundingBox, width: int, height: int) -> tuple[int, int, int, int] | None:
    """Box clipped to image bounds as (left, right, top, bottom), or None."""
    left = max(box.left, 0)
    right = min(box.right, width)
    top = max(box.top, 0)
    bottom = min(box.bottom, height)
    if left >= right or top >= bottom:
        return None
    return left, right, top, bottom


def _boxes(region) -> list[BoundingBox]:
    return sorted(region, key=lambda b: (b.left, b.top, b.right, b.bottom))


def apply_action(img: np.ndarray, action: Action, region) -> np.ndarray:
    """Apply one action to the region (an iterable of bounding boxes).

    An empty region is a no-op for every action, including Crop.
    """
    if img.ndim != 3 or img.shape[2] != 3 or img.dtype != np.uint8:
        raise ValueError("expected an RGB8 array of shape (h, w, 3)")
    height, width = img.shape[:2]
    clipped = [c for c in (clip_box(b, width, height) for b in _boxes(region))
               if c is not None]
    if not clipped:
        return img.copy()

    if action is Action.Crop:
        left = min(c[0] for c in clipped)
        right = max(c[1] for c in clipped)
        top = min(c[2] for c in clipped)
        bottom = max(c[3] for c in clipped)
        return img[top:bottom, left:right].copy()

    out = img.copy()
    for left, right, top, bottom in clipped:
        patch = out[top:bottom, left:right].astype(np.float64)
        if action is Action.Blur:
            for _ in range(2):  # two passes of a 9x9 box blur
                patch = uniform_filter(patch, size=(9, 9, 1), mode="nearest")
            out[top:bottom, left:right] = _round(patch)
        elif action is Action.Blackout:
            out[top:bottom, left:right] = 0
        elif action is Action.Sharpen:
            sharp = np.stack(
                [convolve(patch[:, :, c], _SHARPEN_KERNEL, mode="nearest")
                 for c in range(3)], axis=2)
            out[top:bottom, left:right] = _round(sharp)
        elif action is Action.Brighten:
            out[top:bottom, left:right] = _round(patch * 1.25)
        elif action is Action.Recolor:
            out[top:bottom, left:right] = _round(0.5 * patch + 0.5 * _RECOLOR_TARGET)
        else:
            raise AssertionError(action)
    return out


def apply_edit(img: np.ndarray, image_objects: SymbolicImage, edit: Edit) -> np.ndarray:
    """Apply a symbolic edit to one raster image.

    Boxes are grouped by action; actions run in ACTION_ORDER with Crop
    last.  Per-action boxes are processed in object-id order.
    """
    image_ids = {o.image_id for o in edit}
    if len(image_ids) > 1:
        raise ValueError(f"edit spans multiple images: {sorted(image_ids)}")
    for o in edit:
        if o not in image_objects:
            raise ValueError(f"edit references object {o.id!r} not in this image")

    out = img
    for action in ACTION_ORDER:
        boxes = [o.bbox for o in sorted(edit, key=lambda o: o.id)
                 if action in edit[o]]
        if boxes:
            out = apply_action(out, action, boxes)
    return out


# -- file IO --------------------------------------------------------------

def load_image(path: str | Path) -> np.ndarray:
    with Image.open(path) as im:
        return np.asarray(im.convert("RGB"))


def save_image(img: np.ndarray, path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Image.fromarray(img, mode="RGB").save(path)


def checksum(img: np.ndarray) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(img).tobytes())
    h.update(str(img.shape).encode())
    return h.hexdigest()
