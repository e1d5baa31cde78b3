"""Exact analysis of game ladders: influence relations, pivot counts, swap maps."""

from .game import (
    GameLadder,
    Orientation,
    builtin,
    cap21,
    cap_dual,
    constant,
    dualize,
    evaluate,
    output_levels,
    prop2_game,
    promote,
    unanimity,
    validate_monotone,
)
from .influence import (
    PairClass,
    beats_local,
    check_equivalence,
    global_geq,
    is_linear,
    layers,
    relation_matrix,
    transitivity_violations,
)
from .pivot import (
    Config,
    OrderedAllocation,
    find_pivotal,
    is_pivotal_bruteforce,
    is_pivotal_extremes,
    pivot_counts,
    theorem2_check,
)

__version__ = "0.1.0"

__all__ = [
    "GameLadder",
    "Orientation",
    "builtin",
    "cap21",
    "cap_dual",
    "constant",
    "dualize",
    "evaluate",
    "output_levels",
    "prop2_game",
    "promote",
    "unanimity",
    "validate_monotone",
    "PairClass",
    "beats_local",
    "check_equivalence",
    "global_geq",
    "is_linear",
    "layers",
    "relation_matrix",
    "transitivity_violations",
    "Config",
    "OrderedAllocation",
    "find_pivotal",
    "is_pivotal_bruteforce",
    "is_pivotal_extremes",
    "pivot_counts",
    "theorem2_check",
]
