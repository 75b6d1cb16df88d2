"""Goal inference, consistency, and partial evaluation."""

import random

from batchlens.dsl import Builtin
from batchlens.interp import context
from batchlens.symbolic import (
    EMPTY_IMAGE,
    FaceObject,
    ObjectIs,
    Smiling,
    SymbolicImage,
    TextObject,
)
from batchlens.synth.partial import (
    Goal,
    PNode,
    consistent,
    expand,
    find_open_path,
    hole,
    infer_goal,
    partial_eval,
    predicate_universe,
    trivial_goal,
)
from helpers import random_image
from test_interp import street_scene


def img_of(image, *ids):
    return SymbolicImage(image.by_id(i) for i in ids)


def test_goal_inference_rules():
    rng = random.Random(5)
    for _ in range(200):
        omega = random_image(rng)
        objs = sorted(omega, key=lambda o: o.id)
        under = SymbolicImage(o for o in objs if rng.random() < 0.3)
        over = under | SymbolicImage(o for o in objs if rng.random() < 0.5)
        g = Goal(under, over)
        assert infer_goal("Union", g, omega) == Goal(EMPTY_IMAGE, g.over)
        assert infer_goal("Intersect", g, omega) == Goal(g.under, omega)
        assert infer_goal("Complement", g, omega) == Goal(omega - g.over,
                                                          omega - g.under)
        for c in ("Find", "Filter"):
            assert infer_goal(c, g, omega) == trivial_goal(omega)


def test_example_goal_inference():
    # Union(Complement(Is(Object(car))), hole) with output {p4}:
    # the Complement operand gets (empty, {p4}) and the Is node gets
    # ({p1, p2, p3}, omega)
    omega = street_scene()
    out = img_of(omega, "p4")
    root_goal = Goal(out, out)
    union_child = infer_goal("Union", root_goal, omega)
    assert union_child == Goal(EMPTY_IMAGE, out)
    compl_child = infer_goal("Complement", union_child, omega)
    assert compl_child == Goal(img_of(omega, "p1", "p2", "p3"), omega)


def test_example_partial_eval_inconsistent():
    # the same partial program fails partial evaluation: the Complement
    # subtree evaluates to {p1, p2, p4}, not a subset of {p4}
    omega = street_scene()
    out = img_of(omega, "p4")
    root_goal = Goal(out, out)
    g1 = infer_goal("Union", root_goal, omega)
    g2 = infer_goal("Complement", g1, omega)
    car = PNode("Is", g2, pred=ObjectIs("car"))
    compl = PNode("Complement", g1, (car,))
    union = PNode("Union", root_goal, (compl, hole(g1)))
    assert partial_eval(union, context(omega)) is None


def test_partial_eval_folds_consistent_subtrees():
    omega = street_scene()
    out = img_of(omega, "p2")
    g = Goal(EMPTY_IMAGE, out)
    smiling = PNode("Is", g, pred=Smiling)
    union = PNode("Union", Goal(out, out), (smiling, hole(g)))
    folded = partial_eval(union, context(omega))
    assert folded is not None
    left = folded.children[0]
    assert left.label == "Const" and set(left.const) == {omega.by_id("p2")}
    # holes and constants pass through untouched
    assert folded.children[1].label == "Hole"
    assert partial_eval(folded, context(omega)).skey == folded.skey


def test_consistency_definition():
    omega = street_scene()
    g = Goal(img_of(omega, "p2"), img_of(omega, "p1", "p2"))
    assert consistent(img_of(omega, "p2"), g)
    assert consistent(img_of(omega, "p1", "p2"), g)
    assert not consistent(EMPTY_IMAGE, g)
    assert not consistent(img_of(omega, "p3"), g)


def test_predicate_universe():
    omega = street_scene()
    preds = set(predicate_universe(omega))
    names = {(p.kind, p.arg) for p in preds}
    assert ("FaceObject", None) in names
    assert ("Face", 1) in names
    assert ("ObjectIs", "car") in names and ("ObjectIs", "person") in names
    assert ("TextObject", None) in names and ("Price", None) in names
    assert ("Text", "kx319") in names
    # face bool attrs present, so all three boolean face predicates appear
    assert ("Smiling", None) in names and ("MouthOpen", None) in names
    # no age attributes in this image, so no age predicates
    assert not any(k in ("BelowAge", "AboveAge") for k, _ in names)


def test_expand_covers_grammar():
    omega = street_scene()
    universe = predicate_universe(omega)
    root = hole(trivial_goal(omega))
    out = expand(root, omega, universe)
    labels = {p.label for p in out}
    assert labels == {"All", "Is", "Complement", "Union", "Intersect",
                      "Find", "Filter"}
    n_preds = len(universe)
    # All + Is + Complement + Union + Intersect + Find + Filter
    assert len(out) == 1 + n_preds + 3 + n_preds * len(Builtin) + n_preds
    # every fresh hole carries the inferred goal for its constructor
    for p in out:
        if p.label == "Union":
            assert p.children[0].goal == Goal(EMPTY_IMAGE, p.goal.over)
        if p.label == "Complement":
            assert p.children[0].goal == Goal(omega - p.goal.over,
                                              omega - p.goal.under)


def test_expand_leftmost_outermost():
    omega = street_scene()
    g = trivial_goal(omega)
    p = PNode("Union", g, (PNode("Union", g, (hole(g), hole(g))), hole(g)))
    assert find_open_path(p) == (0, 0)


def test_node_metrics():
    omega = street_scene()
    g = trivial_goal(omega)
    is_car = PNode("Is", g, pred=ObjectIs("car"))
    assert is_car.size == 3 and is_car.holes == 0
    find = PNode("Find", g, (hole(g),), pred=FaceObject, func=Builtin.GetLeft)
    assert find.size == 4 and find.holes == 1
    compl = PNode("Complement", g, (is_car,))
    assert compl.size == 4
    assert compl.to_extractor().size == 4
