"""Reference interpreter for the extractor DSL.

Evaluation is a pure function of (extractor, symbolic image).  A per-image
cache (predicate sets, sorted spatial candidate lists, containment maps)
is attached lazily to each SymbolicImage so repeated evaluation during
synthesis stays cheap.
"""

from __future__ import annotations

from .dsl import (
    Action,
    All,
    Builtin,
    Complement,
    Extractor,
    Filter,
    Find,
    Intersect,
    Is,
    Program,
    Union,
)
from .symbolic import Object, Predicate, SymbolicImage, entails

# An edit maps each object to the ordered list of actions applied to it.
Edit = dict[Object, tuple[Action, ...]]

_ACTION_ORDER = {a: i for i, a in enumerate(Action)}


class EvalContext:
    """Memoized evaluation state for one symbolic image."""

    def __init__(self, image: SymbolicImage):
        self.image = image
        self.universe = frozenset(image.objects)
        # Deterministic object order: by (image id, object id).
        self.ordered = sorted(image.objects, key=lambda o: (o.image_id, o.id))
        self._pred_sets: dict[Predicate, frozenset[Object]] = {}
        self._spatial: dict[tuple[Builtin, Object], tuple[Object, ...]] = {}
        self._contents: dict[Object, tuple[Object, ...]] = {}
        self._first_match: dict[tuple[Builtin, Predicate, Object], Object | None] = {}
        self._eval: dict[Extractor, frozenset[Object]] = {}

    # -- primitive relations ---------------------------------------------
    def pred_set(self, p: Predicate) -> frozenset[Object]:
        cached = self._pred_sets.get(p)
        if cached is None:
            cached = frozenset(o for o in self.ordered if entails(o, p))
            self._pred_sets[p] = cached
        return cached

    def spatial(self, f: Builtin, o: Object) -> tuple[Object, ...]:
        key = (f, o)
        cached = self._spatial.get(key)
        if cached is not None:
            return cached
        # Same-image candidates only, never the source object itself.
        peers = [c for c in self.ordered if c.image_id == o.image_id and c is not o
                 and c != o]
        b = o.bbox
        if f is Builtin.GetRight:
            picked = [c for c in peers if c.bbox.left >= b.left]
            picked.sort(key=lambda c: (c.bbox.left, c.id))
        elif f is Builtin.GetLeft:
            picked = [c for c in peers if c.bbox.right <= b.right]
            picked.sort(key=lambda c: (-c.bbox.right, c.id))
        elif f is Builtin.GetAbove:
            picked = [c for c in peers if c.bbox.top <= b.top]
            picked.sort(key=lambda c: (-c.bbox.top, c.id))
        elif f is Builtin.GetBelow:
            picked = [c for c in peers if c.bbox.bottom >= b.bottom]
            picked.sort(key=lambda c: (c.bbox.bottom, c.id))
        elif f is Builtin.GetParents:
            picked = [c for c in peers if c.bbox.contains(b)]
            picked.sort(key=lambda c: (c.bbox.area, c.id))
        else:
            raise AssertionError(f)
        cached = tuple(picked)
        self._spatial[key] = cached
        return cached

    def contents(self, o: Object) -> tuple[Object, ...]:
        cached = self._contents.get(o)
        if cached is not None:
            return cached
        inside = [c for c in self.ordered
                  if c.image_id == o.image_id and c != o and o.bbox.contains(c.bbox)]
        direct = []
        for c in inside:
            # Shielded if some other contained object contains c in turn.
            if not any(m != c and m.bbox.contains(c.bbox) for m in inside):
                direct.append(c)
        cached = tuple(direct)
        self._contents[o] = cached
        return cached

    def first_match(self, f: Builtin, p: Predicate, o: Object) -> Object | None:
        key = (f, p, o)
        if key in self._first_match:
            return self._first_match[key]
        sat = self.pred_set(p)
        result = next((c for c in self.spatial(f, o) if c in sat), None)
        self._first_match[key] = result
        return result

    # -- extractor evaluation --------------------------------------------
    def eval(self, e: Extractor) -> frozenset[Object]:
        cached = self._eval.get(e)
        if cached is not None:
            return cached
        if isinstance(e, All):
            result = self.universe
        elif isinstance(e, Is):
            result = self.pred_set(e.pred)
        elif isinstance(e, Complement):
            result = self.universe - self.eval(e.e)
        elif isinstance(e, Union):
            result = self.eval(e.a) | self.eval(e.b)
        elif isinstance(e, Intersect):
            result = self.eval(e.a) & self.eval(e.b)
        elif isinstance(e, Find):
            found = {self.first_match(e.func, e.pred, o) for o in self.eval(e.e)}
            found.discard(None)
            result = frozenset(found)  # type: ignore[arg-type]
        elif isinstance(e, Filter):
            sat = self.pred_set(e.pred)
            result = frozenset(c for o in self.eval(e.e)
                               for c in self.contents(o) if c in sat)
        else:
            raise TypeError(e)
        self._eval[e] = result
        return result


def context(image: SymbolicImage) -> EvalContext:
    ctx = image._ctx
    if ctx is None:
        ctx = EvalContext(image)
        image._ctx = ctx
    return ctx


def eval_extractor(e: Extractor, image: SymbolicImage) -> SymbolicImage:
    return SymbolicImage(context(image).eval(e))


def spatial(f: Builtin, o: Object, image: SymbolicImage) -> list[Object]:
    return list(context(image).spatial(f, o))


def first_match(f: Builtin, p: Predicate, o: Object,
                image: SymbolicImage) -> Object | None:
    return context(image).first_match(f, p, o)


def contents(o: Object, image: SymbolicImage) -> list[Object]:
    return list(context(image).contents(o))


def eval_program(p: Program, image: SymbolicImage) -> Edit:
    """The edit induced by running every guard's extractor on ``image``."""
    edit: dict[Object, list[Action]] = {}
    for extractor, action in p.guards:
        for o in context(image).eval(extractor):
            edit.setdefault(o, []).append(action)
    return {o: tuple(sorted(acts, key=_ACTION_ORDER.__getitem__))
            for o, acts in edit.items()}


def edits_equal(a: Edit, b: Edit) -> bool:
    return a == b
