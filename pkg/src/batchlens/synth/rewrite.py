"""Redundancy detection for partially evaluated candidates.

``reducible`` answers whether any node of a candidate matches the
left-hand side of a rewrite rule; matching candidates are discarded
because their canonical equivalent is enumerated separately.  Matching is
syntactic: a rule metavariable only binds hole-free subtrees (constants
included), except the commutativity check, which orders arbitrary
operands under a total term order with holes greatest.
"""

from __future__ import annotations

from .partial import CONST, HOLE, PNode

_LABEL_RANK = {"All": 0, "Is": 1, "Complement": 2, "Union": 3, "Intersect": 4,
               "Find": 5, "Filter": 6, CONST: 7, HOLE: 9}


def order_key(node: PNode):
    """Total term order used for commutativity normalization; Hole greatest."""
    rank = _LABEL_RANK[node.label]
    if node.label == HOLE:
        return (rank,)
    if node.label == CONST:
        return (rank, tuple(sorted(node.const.ids())))
    pred_key = node.pred.sort_key() if node.pred is not None else (-1, "")
    func_key = node.func.value if node.func is not None else ""
    return (rank, pred_key, func_key, tuple(order_key(c) for c in node.children))


def _flatten(node: PNode, label: str) -> list[PNode]:
    """Operand list of a right- or left-nested chain of one AC operator."""
    if node.label != label:
        return [node]
    return _flatten(node.children[0], label) + _flatten(node.children[1], label)


def _matches_ac_rules(node: PNode) -> bool:
    label = node.label
    dual = "Intersect" if label == "Union" else "Union"
    operands = _flatten(node, label)

    closed = [op for op in operands if op.holes == 0]

    # Commutativity normalization: the closed operands must already be in
    # nondecreasing term order.  Operands still containing holes are
    # skipped; their order against the rest is not final yet.
    keys = [order_key(op) for op in closed]
    if any(keys[i] > keys[i + 1] for i in range(len(keys) - 1)):
        return True

    # Idempotence Union(A, A) and its Intersect dual.
    skeys = [op.skey for op in closed]
    if len(set(skeys)) != len(skeys):
        return True

    # Subset domination, constants only: Union(A, B) -> B when A ⊆ B.
    consts = [op for op in operands if op.label == CONST]
    for i, a in enumerate(consts):
        for b in consts[i + 1:]:
            if a.const <= b.const or b.const <= a.const:
                return True

    # Absorption: Union(A, Intersect(A, B)) -> A, and the dual.
    closed_keys = {op.skey for op in closed}
    for op in operands:
        if op.label == dual:
            inner = _flatten(op, dual)
            if any(c.holes == 0 and c.skey in closed_keys for c in inner):
                return True

    # De Morgan factoring: Union(Complement(A), Complement(B)) -> ...
    negations = [op for op in operands
                 if op.label == "Complement" and op.children[0].holes == 0]
    if len(negations) >= 2:
        return True

    # Distributive factoring: Union(Intersect(A, B), Intersect(A, C)) -> ...
    dual_operands = [op for op in operands if op.label == dual and op.holes == 0]
    seen: set = set()
    for op in dual_operands:
        for inner in _flatten(op, dual):
            if inner.skey in seen:
                return True
        seen.update(inner.skey for inner in _flatten(op, dual))
    return False


def _matches_rule(node: PNode) -> bool:
    if node.label == "Complement":
        child = node.children[0]
        return child.label == "Complement" and child.children[0].holes == 0
    if node.label in ("Union", "Intersect"):
        return _matches_ac_rules(node)
    return False


def reducible(node: PNode) -> bool:
    """True iff some node of the candidate matches a rewrite-rule LHS."""
    if node.label in (HOLE, CONST, "All", "Is"):
        return False
    if any(reducible(c) for c in node.children):
        return True
    return _matches_rule(node)
