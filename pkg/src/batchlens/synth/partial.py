"""Partial programs with goal annotations, expansion, and partial evaluation.

A partial program is an immutable tree whose nodes are DSL constructors,
holes, or constants (already-evaluated subtrees).  Every node carries a
goal ``(under, over)``: the objects its subtree must / may produce.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..dsl import (
    All,
    Builtin,
    Complement,
    Extractor,
    Filter,
    Find,
    Intersect,
    Is,
    Union,
)
from ..interp import EvalContext
from ..symbolic import (
    EMPTY_IMAGE,
    Predicate,
    SymbolicImage,
)

HOLE = "Hole"
CONST = "Const"

_ARITY = {"All": 0, "Is": 0, "Complement": 1, "Union": 2, "Intersect": 2,
          "Find": 1, "Filter": 1}


@dataclass(frozen=True)
class Goal:
    """Under/over approximation of a subtree's required output."""

    under: SymbolicImage
    over: SymbolicImage


def consistent(image: SymbolicImage, goal: Goal) -> bool:
    return goal.under <= image and image <= goal.over


def infer_goal(constructor: str, parent: Goal, omega_in: SymbolicImage) -> Goal:
    """Goal for the children of ``constructor`` given the parent's goal."""
    if constructor == "Union":
        return Goal(EMPTY_IMAGE, parent.over)
    if constructor == "Intersect":
        return Goal(parent.under, omega_in)
    if constructor == "Complement":
        return Goal(omega_in - parent.over, omega_in - parent.under)
    if constructor in ("Find", "Filter"):
        return Goal(EMPTY_IMAGE, omega_in)
    raise ValueError(f"no child goal for {constructor!r}")


def trivial_goal(omega_in: SymbolicImage) -> Goal:
    return Goal(EMPTY_IMAGE, omega_in)


class PNode:
    """One node of a partial program; the whole subtree is immutable."""

    __slots__ = ("label", "goal", "children", "pred", "func", "const",
                 "size", "depth", "holes", "skey")

    def __init__(self, label, goal, children=(), pred=None, func=None, const=None):
        self.label = label
        self.goal = goal
        self.children = children
        self.pred = pred
        self.func = func
        self.const = const
        if label == HOLE:
            self.size, self.depth, self.holes = 1, 1, 1
            self.skey = ("Hole",)
        elif label == CONST:
            self.size, self.depth, self.holes = 1, 1, 0
            self.skey = ("Const", tuple(sorted(const.ids())))
        else:
            size = 1 if pred is None else 1 + pred.size
            if func is not None:
                size += 1
            depth = 2 if (pred is not None or func is not None) else 1
            holes = 0
            for c in children:
                size += c.size
                holes += c.holes
                if c.depth >= depth:
                    depth = c.depth + 1
            self.size = size
            self.depth = depth
            self.holes = holes
            self.skey = (label, pred, func, tuple(c.skey for c in children))

    @property
    def is_complete(self) -> bool:
        return self.holes == 0

    def to_extractor(self) -> Extractor:
        """Syntax of a complete, constant-free subtree."""
        if self.label == "All":
            return All()
        if self.label == "Is":
            return Is(self.pred)
        if self.label == "Complement":
            return Complement(self.children[0].to_extractor())
        if self.label == "Union":
            return Union(self.children[0].to_extractor(),
                         self.children[1].to_extractor())
        if self.label == "Intersect":
            return Intersect(self.children[0].to_extractor(),
                             self.children[1].to_extractor())
        if self.label == "Find":
            return Find(self.children[0].to_extractor(), self.pred, self.func)
        if self.label == "Filter":
            return Filter(self.children[0].to_extractor(), self.pred)
        raise ValueError(f"cannot convert {self.label} node to an extractor")

    def __repr__(self):
        if self.label == HOLE:
            return "□"
        if self.label == CONST:
            return f"Const({sorted(o.id for o in self.const)})"
        parts = [repr(c) for c in self.children]
        if self.pred is not None:
            parts.append(repr(self.pred))
        if self.func is not None:
            parts.append(self.func.value)
        return f"{self.label}({', '.join(parts)})" if parts else self.label


def hole(goal: Goal) -> PNode:
    return PNode(HOLE, goal)


def const(image: SymbolicImage, goal: Goal) -> PNode:
    return PNode(CONST, goal, const=image)


def predicate_universe(omega_in: SymbolicImage,
                       age_thresholds=(18,)) -> tuple[Predicate, ...]:
    """Predicates instantiable from attributes observed in the input image."""
    from ..symbolic import (AboveAge, BelowAge, Face, FaceObject, ObjectIs,
                            Predicate, PhoneNumber, Price, Smiling, Text,
                            TextObject, normalize_word)

    preds: set[Predicate] = set()
    face_attr_seen = False
    age_seen = False
    for o in omega_in:
        t = o.object_type
        if t == "face":
            preds.add(FaceObject)
            if "faceId" in o.props:
                preds.add(Face(o.props["faceId"]))
            if any(k in o.props for k in ("Smiling", "EyesOpen", "MouthOpen")):
                face_attr_seen = True
            if "ageLow" in o.props or "ageHigh" in o.props:
                age_seen = True
        elif t == "text":
            preds.add(TextObject)
            preds.add(Price)
            preds.add(PhoneNumber)
            body = o.props.get("textBody")
            if isinstance(body, str) and normalize_word(body):
                preds.add(Text(body))
        else:
            preds.add(ObjectIs(t))
    if face_attr_seen:
        preds.update((Smiling, Predicate("EyesOpen"), Predicate("MouthOpen")))
    if age_seen:
        for n in age_thresholds:
            preds.add(BelowAge(n))
            preds.add(AboveAge(n))
    return tuple(sorted(preds))


_BUILTINS = tuple(Builtin)


def find_open_path(node: PNode, path=()) -> tuple[int, ...] | None:
    """Path (child indices) to the leftmost-outermost hole, or None."""
    if node.label == HOLE:
        return path
    for i, c in enumerate(node.children):
        if c.holes:
            found = find_open_path(c, path + (i,))
            if found is not None:
                return found
    return None


def _replace(node: PNode, path: tuple[int, ...], replacement: PNode) -> PNode:
    if not path:
        return replacement
    i = path[0]
    new_children = list(node.children)
    new_children[i] = _replace(node.children[i], path[1:], replacement)
    return PNode(node.label, node.goal, tuple(new_children),
                 node.pred, node.func, node.const)


def expand(program: PNode, omega_in: SymbolicImage,
           universe: tuple[Predicate, ...],
           goal_inference: bool = True) -> list[PNode]:
    """All one-step refinements of the leftmost-outermost hole.

    The expanded node keeps the hole's goal; fresh holes get goals from
    ``infer_goal`` (or the trivial goal when goal inference is off).
    """
    path = find_open_path(program)
    if path is None:
        raise ValueError("no open node to expand")
    target = program
    for i in path:
        target = target.children[i]
    goal = target.goal

    def child_goal(constructor: str) -> Goal:
        if not goal_inference:
            return trivial_goal(omega_in)
        return infer_goal(constructor, goal, omega_in)

    replacements: list[PNode] = [PNode("All", goal)]
    replacements.extend(PNode("Is", goal, pred=p) for p in universe)
    replacements.append(PNode("Complement", goal, (hole(child_goal("Complement")),)))
    g_union = child_goal("Union")
    replacements.append(PNode("Union", goal, (hole(g_union), hole(g_union))))
    g_inter = child_goal("Intersect")
    replacements.append(PNode("Intersect", goal, (hole(g_inter), hole(g_inter))))
    g_find = child_goal("Find")
    for p in universe:
        for f in _BUILTINS:
            replacements.append(PNode("Find", goal, (hole(g_find),), pred=p, func=f))
    g_filter = child_goal("Filter")
    replacements.extend(
        PNode("Filter", goal, (hole(g_filter),), pred=p) for p in universe
    )
    return [_replace(program, path, r) for r in replacements]


def partial_eval(program: PNode, ctx: EvalContext,
                 memo: dict | None = None) -> PNode | None:
    """Fold complete subtrees into constants; None signals goal inconsistency.

    Holes and constants pass through; a maximal complete subtree is
    evaluated on the input image and replaced by a constant if the result
    is consistent with the subtree's goal.  ``memo`` (keyed by structure
    and goal) makes re-folding shared subtrees a dictionary hit.
    """
    if program.label in (HOLE, CONST):
        return program
    if program.is_complete:
        key = (program.skey, program.goal)
        if memo is not None and key in memo:
            return memo[key]
        result = SymbolicImage(ctx.eval(program.to_extractor()))
        folded = const(result, program.goal) if consistent(result, program.goal) \
            else None
        if memo is not None:
            memo[key] = folded
        return folded
    new_children = []
    for c in program.children:
        folded = partial_eval(c, ctx, memo)
        if folded is None:
            return None
        new_children.append(folded)
    return PNode(program.label, program.goal, tuple(new_children),
                 program.pred, program.func, program.const)
