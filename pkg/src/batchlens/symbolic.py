"""Symbolic images: objects, attributes, predicates, entailment.

A symbolic image abstracts one or more raster images as a set of objects,
each carrying an attribute map and a bounding box.  All types here are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping


class IngestionError(ValueError):
    """Raised when annotation data violates a structural invariant."""


# Attributes that only make sense on particular object types.
FACE_ONLY_ATTRS = frozenset(
    {"faceId", "Smiling", "EyesOpen", "MouthOpen", "ageLow", "ageHigh"}
)
TEXT_ONLY_ATTRS = frozenset({"textBody", "isPrice", "isPhoneNumber"})

_PRICE_RE = re.compile(r"^[$€£]?\d+(\.\d{2})?$")
_PHONE_RE = re.compile(r"^\(?\d{3}\)?[-. ]?\d{3}[-. ]?\d{4}$")

_STRIP_CHARS = string.punctuation + string.whitespace


def normalize_word(text: str) -> str:
    """Canonical form used for text matching: trim punctuation, lowercase."""
    return text.strip(_STRIP_CHARS).lower()


def is_price(text: str) -> bool:
    return bool(_PRICE_RE.match(text.strip()))


def is_phone_number(text: str) -> bool:
    return bool(_PHONE_RE.match(text.strip()))


@dataclass(frozen=True)
class BoundingBox:
    """Pixel-coordinate box; y grows downward."""

    left: int
    right: int
    top: int
    bottom: int

    def __post_init__(self):
        if not (self.left < self.right and self.top < self.bottom):
            raise ValueError(f"degenerate box {self}")
        if min(self.left, self.right, self.top, self.bottom) < 0:
            raise ValueError(f"negative coordinate in {self}")

    @property
    def area(self) -> int:
        return (self.right - self.left) * (self.bottom - self.top)

    def contains(self, other: "BoundingBox") -> bool:
        """Non-strict containment of ``other`` within this box."""
        return (
            other.left >= self.left
            and other.right <= self.right
            and other.top >= self.top
            and other.bottom <= self.bottom
        )


class Object:
    """A detected object: attribute map + bounding box + stable id.

    Equality and hashing are by ``(image_id, id)`` so symbolic-image set
    algebra is over object identity, never attribute values.
    """

    __slots__ = ("id", "props", "bbox", "image_id", "_hash")

    def __init__(self, id: str, props: Mapping[str, object], bbox: BoundingBox,
                 image_id: str = ""):
        object_type = props.get("objectType")
        if object_type is None:
            raise IngestionError(f"object {id!r} has no objectType attribute")
        if object_type != "face" and FACE_ONLY_ATTRS & props.keys():
            raise IngestionError(f"object {id!r}: face attributes on {object_type!r}")
        if object_type != "text" and TEXT_ONLY_ATTRS & props.keys():
            raise IngestionError(f"object {id!r}: text attributes on {object_type!r}")
        self.id = id
        self.props = dict(props)
        self.bbox = bbox
        self.image_id = image_id
        self._hash = hash((image_id, id))

    @property
    def object_type(self) -> str:
        return self.props["objectType"]  # type: ignore[return-value]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Object)
            and self.id == other.id
            and self.image_id == other.image_id
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Object({self.id!r}, {self.object_type!r})"


def make_text_object(id: str, body: str, bbox: BoundingBox, image_id: str = "",
                     **extra) -> Object:
    """Text object with the derived isPrice/isPhoneNumber attributes filled in."""
    props = {
        "objectType": "text",
        "textBody": body,
        "isPrice": is_price(body),
        "isPhoneNumber": is_phone_number(body),
    }
    props.update(extra)
    return Object(id, props, bbox, image_id)


class SymbolicImage:
    """An immutable set of objects with ordinary set algebra."""

    __slots__ = ("objects", "_ctx", "_hash")

    def __init__(self, objects: Iterable[Object] = ()):
        objs = frozenset(objects)
        seen = {}
        for o in objs:
            key = (o.image_id, o.id)
            if key in seen:
                raise IngestionError(f"duplicate object id {key}")
            seen[key] = o
        self.objects = objs
        self._ctx = None  # lazily attached interpreter cache
        self._hash = hash(objs)

    # -- set algebra ------------------------------------------------------
    def __or__(self, other: "SymbolicImage") -> "SymbolicImage":
        return SymbolicImage(self.objects | other.objects)

    def __and__(self, other: "SymbolicImage") -> "SymbolicImage":
        return SymbolicImage(self.objects & other.objects)

    def __sub__(self, other: "SymbolicImage") -> "SymbolicImage":
        return SymbolicImage(self.objects - other.objects)

    def __le__(self, other: "SymbolicImage") -> bool:
        return self.objects <= other.objects

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolicImage) and self.objects == other.objects

    def __hash__(self) -> int:
        return self._hash

    def __contains__(self, o: Object) -> bool:
        return o in self.objects

    def __iter__(self) -> Iterator[Object]:
        return iter(self.objects)

    def __len__(self) -> int:
        return len(self.objects)

    def __bool__(self) -> bool:
        return bool(self.objects)

    def __repr__(self) -> str:
        ids = ", ".join(sorted(f"{o.image_id}/{o.id}" if o.image_id else o.id
                               for o in self.objects))
        return f"SymbolicImage({{{ids}}})"

    def ids(self) -> frozenset:
        return frozenset((o.image_id, o.id) for o in self.objects)

    def by_id(self, id: str) -> Object:
        for o in self.objects:
            if o.id == id:
                return o
        raise KeyError(id)


EMPTY_IMAGE = SymbolicImage()


# -- predicates -----------------------------------------------------------

_NULLARY_KINDS = ("FaceObject", "TextObject", "Smiling", "EyesOpen",
                  "MouthOpen", "Price", "PhoneNumber")
_UNARY_KINDS = ("ObjectIs", "Face", "BelowAge", "AboveAge", "Text")
PREDICATE_KINDS = _NULLARY_KINDS + _UNARY_KINDS
_KIND_RANK = {k: i for i, k in enumerate(PREDICATE_KINDS)}


@dataclass(frozen=True, order=False)
class Predicate:
    """One predicate of the extractor language; immutable and totally ordered."""

    kind: str
    arg: object = None

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown predicate kind {self.kind!r}")
        if (self.arg is None) != (self.kind in _NULLARY_KINDS):
            raise ValueError(f"bad arity for predicate {self.kind}")

    @property
    def size(self) -> int:
        """AST node count: parameterized predicates count the constant too."""
        return 1 if self.arg is None else 2

    def sort_key(self):
        return (_KIND_RANK[self.kind], str(self.arg))

    def __lt__(self, other: "Predicate") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        if self.arg is None:
            return self.kind
        return f"{self.kind}({self.arg!r})"


# Convenience constructors / singletons.
FaceObject = Predicate("FaceObject")
TextObject = Predicate("TextObject")
Smiling = Predicate("Smiling")
EyesOpen = Predicate("EyesOpen")
MouthOpen = Predicate("MouthOpen")
Price = Predicate("Price")
PhoneNumber = Predicate("PhoneNumber")


def ObjectIs(cls: str) -> Predicate:
    return Predicate("ObjectIs", cls)


def Face(n: int) -> Predicate:
    return Predicate("Face", int(n))


def BelowAge(n: int) -> Predicate:
    return Predicate("BelowAge", int(n))


def AboveAge(n: int) -> Predicate:
    return Predicate("AboveAge", int(n))


def Text(word: str) -> Predicate:
    return Predicate("Text", normalize_word(word))


def entails(o: Object, p: Predicate) -> bool:
    """Whether object ``o`` satisfies predicate ``p``.

    Missing attributes mean "does not entail"; this is total and pure.
    """
    kind = p.kind
    props = o.props
    if kind == "FaceObject":
        return o.object_type == "face"
    if kind == "TextObject":
        return o.object_type == "text"
    if kind == "ObjectIs":
        return o.object_type == p.arg
    if kind in ("Smiling", "EyesOpen", "MouthOpen"):
        return props.get(kind) is True
    if kind == "Face":
        return props.get("faceId") == p.arg
    if kind == "BelowAge":
        age_high = props.get("ageHigh")
        return age_high is not None and age_high < p.arg  # type: ignore[operator]
    if kind == "AboveAge":
        age_low = props.get("ageLow")
        return age_low is not None and age_low >= p.arg  # type: ignore[operator]
    if kind == "Text":
        body = props.get("textBody")
        return isinstance(body, str) and normalize_word(body) == p.arg
    if kind == "Price":
        return props.get("isPrice") is True
    if kind == "PhoneNumber":
        return props.get("isPhoneNumber") is True
    raise AssertionError(kind)


def merge_images(annotated: Iterable[tuple[str, Iterable[Object]]]) -> SymbolicImage:
    """Union of several annotated images into one symbolic image.

    Object ids are namespaced as ``imageId/localId`` so the merged ids are
    globally unique; each merged object keeps its source image id.
    """
    merged: dict[str, Object] = {}
    for image_id, objects in annotated:
        for o in objects:
            gid = f"{image_id}/{o.id}"
            if gid in merged:
                raise IngestionError(f"duplicate object {o.id!r} in image {image_id!r}")
            merged[gid] = Object(gid, o.props, o.bbox, image_id)
    return SymbolicImage(merged.values())
