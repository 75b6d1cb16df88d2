from .partial import (
    CONST,
    HOLE,
    Goal,
    PNode,
    const,
    consistent,
    expand,
    hole,
    infer_goal,
    partial_eval,
    predicate_universe,
    trivial_goal,
)
from .rewrite import order_key, reducible
from .search import (
    SearchConfig,
    SearchReport,
    SearchStats,
    Spec,
    SynthesisFailure,
    SynthesisTimeout,
    synthesize,
    synthesize_extractor,
)

__all__ = [
    "CONST", "HOLE", "Goal", "PNode", "SearchConfig", "SearchReport",
    "SearchStats", "Spec", "SynthesisFailure", "SynthesisTimeout", "const",
    "consistent", "expand", "hole", "infer_goal", "order_key", "partial_eval",
    "predicate_universe", "reducible", "synthesize", "synthesize_extractor",
    "trivial_goal",
]
