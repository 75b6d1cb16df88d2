"""Worklist synthesis: per-action decomposition and top-down extractor search."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from ..dsl import Action, Builtin, Extractor, Program, program_to_text
from ..interp import context
from ..symbolic import Object, SymbolicImage, merge_images
from .partial import (
    CONST,
    HOLE,
    Goal,
    PNode,
    _replace,
    const,
    expand,
    find_open_path,
    hole,
    infer_goal,
    partial_eval,
    predicate_universe,
    trivial_goal,
)
from .rewrite import _matches_rule, reducible

Edit = dict[Object, tuple[Action, ...]]


@dataclass(frozen=True)
class Spec:
    """Demonstrations: per-image object sets and the edits applied to them."""

    images: dict[str, frozenset[Object]]
    edits: dict[str, Edit]

    def __post_init__(self):
        for image_id, edit in self.edits.items():
            objects = self.images.get(image_id)
            if objects is None:
                raise ValueError(f"edit references unknown image {image_id!r}")
            for o in edit:
                if o not in objects:
                    raise ValueError(
                        f"edit references unknown object {o.id!r} in {image_id!r}")


@dataclass
class SearchConfig:
    budget_s: float = 180.0
    max_size: int = 30
    enable_goal_inference: bool = True
    enable_partial_eval: bool = True
    enable_rewrites: bool = True
    age_thresholds: tuple[int, ...] = (18,)

    def __post_init__(self):
        if self.budget_s <= 0 or self.max_size <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class SearchStats:
    enqueued: int = 0
    dequeued: int = 0
    pruned_inconsistent: int = 0
    pruned_reducible: int = 0
    pruned_size: int = 0
    elapsed_s: float = 0.0


@dataclass
class SearchReport:
    """Machine-readable record of one synthesis run."""

    program_text: str | None = None
    elapsed_s: float = 0.0
    per_action: dict[str, SearchStats] = field(default_factory=dict)

    @property
    def enqueued(self) -> int:
        return sum(s.enqueued for s in self.per_action.values())

    @property
    def dequeued(self) -> int:
        return sum(s.dequeued for s in self.per_action.values())

    @property
    def pruned_inconsistent(self) -> int:
        return sum(s.pruned_inconsistent for s in self.per_action.values())

    @property
    def pruned_reducible(self) -> int:
        return sum(s.pruned_reducible for s in self.per_action.values())

    def to_dict(self) -> dict:
        return {
            "program": self.program_text,
            "elapsed_s": round(self.elapsed_s, 4),
            "enqueued": self.enqueued,
            "dequeued": self.dequeued,
            "pruned_inconsistent": self.pruned_inconsistent,
            "pruned_reducible": self.pruned_reducible,
            "per_action": {
                a: {"enqueued": s.enqueued, "dequeued": s.dequeued,
                    "pruned_inconsistent": s.pruned_inconsistent,
                    "pruned_reducible": s.pruned_reducible,
                    "pruned_size": s.pruned_size,
                    "elapsed_s": round(s.elapsed_s, 4)}
                for a, s in self.per_action.items()
            },
        }


class SynthesisFailure(Exception):
    """Search space exhausted without a consistent extractor."""

    def __init__(self, action: Action | None = None):
        self.action = action
        super().__init__(f"no extractor found{f' for {action.value}' if action else ''}")


class SynthesisTimeout(SynthesisFailure):
    """Per-round time budget exhausted while searching for one action."""

    def __init__(self, action: Action | None = None):
        Exception.__init__(self, f"synthesis timed out"
                           + (f" for action {action.value}" if action else ""))
        self.action = action


def synthesize_extractor(
    omega_in: SymbolicImage,
    omega_out: SymbolicImage,
    config: SearchConfig | None = None,
    deadline: float | None = None,
    stats: SearchStats | None = None,
) -> Extractor:
    """First complete program (in (size, depth, FIFO) order) matching the goal.

    Raises SynthesisTimeout / SynthesisFailure on budget or worklist
    exhaustion.
    """
    config = config or SearchConfig()
    if not omega_out <= omega_in:
        raise ValueError("target objects must come from the input image")
    stats = stats if stats is not None else SearchStats()
    start = time.monotonic()
    if deadline is None:
        deadline = start + config.budget_s
    try:
        if config.enable_partial_eval:
            return _search_folded(omega_in, omega_out, config, deadline, stats)
        return _search_syntactic(omega_in, omega_out, config, deadline, stats)
    finally:
        stats.elapsed_s = time.monotonic() - start


def _search_syntactic(omega_in, omega_out, config, deadline, stats) -> Extractor:
    """Reference search without partial evaluation (ablation path)."""
    ctx = context(omega_in)
    universe = predicate_universe(omega_in, config.age_thresholds)
    root = hole(Goal(omega_out, omega_out))
    counter = 0
    worklist: list[tuple[int, int, int, PNode]] = [(1, 1, counter, root)]
    target = frozenset(omega_out.objects)
    outputs_seen: set[frozenset[Object]] = set()

    while worklist:
        if time.monotonic() > deadline:
            raise SynthesisTimeout()
        _, _, _, program = heapq.heappop(worklist)
        stats.dequeued += 1
        if program.is_complete:
            extractor = program.to_extractor()
            output = ctx.eval(extractor)
            if output in outputs_seen:
                continue  # an equal-output candidate was already tested
            outputs_seen.add(output)
            if output == target:
                return extractor
            continue
        for candidate in expand(program, omega_in, universe,
                                config.enable_goal_inference):
            if candidate.size > config.max_size:
                stats.pruned_size += 1
                continue
            if config.enable_rewrites and reducible(candidate):
                stats.pruned_reducible += 1
                continue
            counter += 1
            stats.enqueued += 1
            heapq.heappush(worklist,
                           (candidate.size, candidate.depth, counter, candidate))
    raise SynthesisFailure()


def _search_folded(omega_in, omega_out, config, deadline, stats) -> Extractor:
    """Worklist search over partially evaluated trees.

    Complete subtrees are folded to constants incrementally as the open
    hole is filled, so per-candidate work is linear in the hole's depth.
    Syntactically distinct candidates folding to the same Const-decorated
    tree admit the same completions; only the first (smallest) is kept.
    """
    ctx = context(omega_in)
    universe = predicate_universe(omega_in, config.age_thresholds)
    goal_inference = config.enable_goal_inference
    rewrites = config.enable_rewrites
    universe_set = ctx.universe
    trivial = trivial_goal(omega_in)

    root = hole(Goal(omega_out, omega_out))
    counter = 0
    # Entries: (folded size, folded depth, fifo, syntactic, folded).  The
    # priority is the size of the partially evaluated tree, so a folded
    # constant costs one node no matter how large its syntax was.
    worklist: list[tuple[int, int, int, PNode, PNode]] = [(1, 1, 0, root, root)]
    folded_seen: set = {root.skey}
    builtins = tuple(Builtin)

    def fold_value(node: PNode, child_sets: list[frozenset]) -> frozenset:
        label = node.label
        if label == "Union":
            return child_sets[0] | child_sets[1]
        if label == "Intersect":
            return child_sets[0] & child_sets[1]
        if label == "Complement":
            return universe_set - child_sets[0]
        if label == "Find":
            found = {ctx.first_match(node.func, node.pred, o)
                     for o in child_sets[0]}
            found.discard(None)
            return frozenset(found)
        if label == "Filter":
            sat = ctx.pred_set(node.pred)
            return frozenset(c for o in child_sets[0]
                             for c in ctx.contents(o) if c in sat)
        raise AssertionError(label)

    while worklist:
        if time.monotonic() > deadline:
            raise SynthesisTimeout()
        _, _, _, syn, folded = heapq.heappop(worklist)
        stats.dequeued += 1
        if syn.is_complete:
            # Root consistency forced equality with the target already.
            return syn.to_extractor()

        path = find_open_path(folded)
        syn_path = find_open_path(syn)  # same hole, unfolded coordinates
        spine = []
        node = folded
        for i in path:
            spine.append(node)
            node = node.children[i]
        hole_goal = node.goal
        under = frozenset(hole_goal.under.objects)
        over = frozenset(hole_goal.over.objects)
        base_size = syn.size - 1

        def child_goal(constructor: str) -> Goal:
            if not goal_inference:
                return trivial
            return infer_goal(constructor, hole_goal, omega_in)

        # Candidate replacements in canonical order; leaves carry their value.
        replacements: list[tuple] = [(1, "All", None, None, universe_set)]
        for p in universe:
            replacements.append((1 + p.size, "Is", p, None, ctx.pred_set(p)))
        g = child_goal("Complement")
        replacements.append((2, "Complement", None, None, (hole(g),)))
        g = child_goal("Union")
        replacements.append((3, "Union", None, None, (hole(g), hole(g))))
        g = child_goal("Intersect")
        replacements.append((3, "Intersect", None, None, (hole(g), hole(g))))
        g = child_goal("Find")
        for p in universe:
            for f in builtins:
                replacements.append((3 + p.size, "Find", p, f, (hole(g),)))
        g = child_goal("Filter")
        for p in universe:
            replacements.append((2 + p.size, "Filter", p, None, (hole(g),)))

        for extra, label, pred, func, payload in replacements:
            if base_size + extra > config.max_size:
                stats.pruned_size += 1
                continue
            if isinstance(payload, frozenset):  # complete leaf with known value
                if not (under <= payload and payload <= over):
                    stats.pruned_inconsistent += 1
                    continue
                r_syn = PNode(label, hole_goal, pred=pred)
                rebuilt = const(SymbolicImage(payload), hole_goal)
            else:
                r_syn = PNode(label, hole_goal, payload, pred, func)
                rebuilt = r_syn
            # Propagate the substitution up the spine, folding any node
            # whose children are now all constants.
            pruned = None
            for parent, idx in zip(reversed(spine), reversed(range(len(path)))):
                i = path[idx]
                children = list(parent.children)
                children[i] = rebuilt
                if all(c.label == CONST for c in children):
                    value = fold_value(parent, [frozenset(c.const.objects)
                                                for c in children])
                    pg = parent.goal
                    if not (pg.under.objects <= value <= pg.over.objects):
                        pruned = "inconsistent"
                        break
                    rebuilt = const(SymbolicImage(value), pg)
                else:
                    if (goal_inference and parent.label == "Union"
                            and children[0].label == CONST
                            and children[1].label == HOLE):
                        # The left operand is fixed; the right one must
                        # now produce at least the remainder of the goal.
                        need = parent.goal.under.objects - children[0].const.objects
                        children[1] = hole(Goal(SymbolicImage(need),
                                                parent.goal.over))
                    rebuilt = PNode(parent.label, parent.goal, tuple(children),
                                    parent.pred, parent.func)
                    if rewrites and _matches_rule(rebuilt):
                        pruned = "reducible"
                        break
            if pruned == "inconsistent":
                stats.pruned_inconsistent += 1
                continue
            if pruned == "reducible":
                stats.pruned_reducible += 1
                continue
            if rebuilt.skey in folded_seen:
                continue
            folded_seen.add(rebuilt.skey)
            new_syn = _replace(syn, syn_path, r_syn)
            counter += 1
            stats.enqueued += 1
            heapq.heappush(worklist,
                           (rebuilt.size, rebuilt.depth, counter, new_syn, rebuilt))
    raise SynthesisFailure()


def action_targets(spec: Spec) -> dict[Action, set[tuple[str, str]]]:
    """Per-action (imageId, localId) pairs demonstrated in the spec."""
    targets: dict[Action, set[tuple[str, str]]] = {}
    for image_id, edit in spec.edits.items():
        for o, actions in edit.items():
            for a in actions:
                targets.setdefault(a, set()).add((image_id, o.id))
    return targets


def synthesize(spec: Spec, config: SearchConfig | None = None,
               ) -> tuple[Program, SearchReport]:
    """Synthesize one guarded action per demonstrated action (independent searches)."""
    if not spec.images:
        raise ValueError("spec is empty")
    config = config or SearchConfig()
    start = time.monotonic()
    deadline = start + config.budget_s
    omega_in = merge_images(sorted(spec.images.items()))
    merged_by_key = {(o.image_id, o.id.split("/", 1)[1]): o for o in omega_in}

    report = SearchReport()
    guards = []
    targets = action_targets(spec)
    for action in Action:
        keys = targets.get(action)
        if not keys:
            continue
        omega_out = SymbolicImage(merged_by_key[k] for k in keys)
        stats = SearchStats()
        report.per_action[action.value] = stats
        try:
            extractor = synthesize_extractor(omega_in, omega_out, config,
                                             deadline=deadline, stats=stats)
        except SynthesisTimeout:
            report.elapsed_s = time.monotonic() - start
            raise SynthesisTimeout(action)
        except SynthesisFailure:
            report.elapsed_s = time.monotonic() - start
            raise SynthesisFailure(action)
        guards.append((extractor, action))
    program = Program(tuple(guards))
    report.program_text = program_to_text(program)
    report.elapsed_s = time.monotonic() - start
    return program, report
