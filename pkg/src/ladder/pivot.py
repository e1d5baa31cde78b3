"""Ordered allocations of positions and i-pivotal players.

An ordered allocation pairs an entry order with a full profile.  Player p is
i-pivotal in it when p is the first entrant after whose assignment the output
is settled on one side of the level z_i: either every completion of the later
players reaches z_i, or none does.

Two independent tests are provided.  ``is_pivotal_bruteforce`` enumerates the
completions directly and works for any production function.  For a monotone
game ``is_pivotal_extremes`` only looks at the two prefix extremes (later
players all at the top, or all at the bottom); which extreme bounds the output
from below depends on the game's orientation.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateRange,
    DimensionMismatch,
    InternalInconsistency,
    LevelOutOfRange,
    MultiplePivots,
    NoPivot,
    NotMonotone,
)
from .game import (
    TOLERANCE,
    GameLadder,
    Orientation,
    check_profile,
    check_size,
    evaluate,
    value_at,
    with_orientation,
)
from .influence import RelationMatrix, relation_matrix


class Extreme(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"


class Config(enum.Enum):
    """Which world a pivot analysis runs in.

    CANONICAL works with non-decreasing games and the mirrored extreme test;
    PRINTED works with non-increasing games and the extreme test exactly as
    it is usually written.  Games are moved between worlds with ``dualize``.
    """

    CANONICAL = "canonical"
    PRINTED = "printed"

    @property
    def orientation(self) -> Orientation:
        if self is Config.CANONICAL:
            return Orientation.NON_DECREASING
        return Orientation.NON_INCREASING


def in_config(game: GameLadder, config) -> GameLadder:
    return with_orientation(game, Config(config).orientation)


@dataclass(frozen=True)
class OrderedAllocation:
    """``order`` lists players by entry (order[0] enters first)."""

    order: tuple
    profile: tuple

    def __post_init__(self):
        n = len(self.profile)
        if sorted(self.order) != list(range(1, n + 1)):
            raise DimensionMismatch(f"entry order {self.order} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.order)

    def rank(self, p: int) -> int:
        """1-based entry rank of player p."""
        return self.order.index(p) + 1

    def prec(self, p: int) -> int | None:
        """Player entering right before p, or None when p enters first."""
        k = self.order.index(p)
        return self.order[k - 1] if k else None

    def later(self, p: int) -> tuple:
        return self.order[self.order.index(p) + 1:]


def allocation(order, profile) -> OrderedAllocation:
    return OrderedAllocation(tuple(order), tuple(profile))


def all_allocations(n: int, j: int):
    """Every ordered allocation: entry orders outermost, profiles in canonical order."""
    for order in itertools.permutations(range(1, n + 1)):
        for rev in itertools.product(range(1, j + 1), repeat=n):
            yield OrderedAllocation(order, tuple(reversed(rev)))


def _check_player(R: OrderedAllocation, p: int) -> None:
    if not 1 <= p <= R.n:
        raise DimensionMismatch(f"player {p} outside [1, {R.n}]")


def _check_alloc(game: GameLadder, R: OrderedAllocation) -> None:
    if R.n != game.n:
        raise DimensionMismatch(f"allocation has {R.n} players, game has {game.n}")
    check_profile(game, R.profile)


def level_value(game: GameLadder, i: int):
    """z_i for a pivot level i in 1..k-1."""
    k = len(game.levels)
    if not 1 <= i <= k - 1:
        raise LevelOutOfRange(f"level {i} outside [1, {k - 1}]" if k > 1 else "constant game has no pivot levels")
    return game.levels[i - 1]


def prefix_extreme(game: GameLadder, R: OrderedAllocation, p: int, end: Extreme) -> tuple:
    """Keep positions of p and earlier entrants; send later entrants to j or 1."""
    _check_alloc(game, R)
    _check_player(R, p)
    fill = game.j if Extreme(end) is Extreme.TOP else 1
    x = list(R.profile)
    for u in R.later(p):
        x[u - 1] = fill
    return tuple(x)


def agreement_profiles(game: GameLadder, R: OrderedAllocation, p: int | None):
    """Profiles of all allocations agreeing with R up to p (p=None: nobody fixed)."""
    free = list(R.order) if p is None else list(R.later(p))
    for vals in itertools.product(range(1, game.j + 1), repeat=len(free)):
        x = list(R.profile)
        for u, v in zip(free, vals):
            x[u - 1] = v
        yield tuple(x)


def _ge(v, z) -> bool:
    return v >= z - TOLERANCE


def is_pivotal_bruteforce(game: GameLadder, R: OrderedAllocation, i: int, p: int) -> bool:
    """Ground truth: enumerate every completion after p and after prec(p)."""
    _check_alloc(game, R)
    _check_player(R, p)
    z = level_value(game, i)
    here = [_ge(evaluate(game, x), z) for x in agreement_profiles(game, R, p)]
    prev = R.prec(p)
    before = None if prev is None else [_ge(evaluate(game, x), z) for x in agreement_profiles(game, R, prev)]
    if all(here):
        return before is None or not all(before)
    if not any(here):
        return before is None or any(before)
    return False


def _require_monotone(game: GameLadder) -> None:
    report = game.monotone_report
    if not report.holds:
        raise NotMonotone(report.witness)


class PivotClass(enum.Enum):
    SECURER = "securer"  # output settled at or above z_i
    BLOCKER = "blocker"  # output settled below z_i
    NONE = "none"


def _extreme_class(game: GameLadder, R: OrderedAllocation, z, p: int) -> PivotClass:
    # low/high: the prefix extremes giving the smallest/largest output
    if game.orientation is Orientation.NON_DECREASING:
        low_end, low_pos, high_end, high_pos = Extreme.BOTTOM, 1, Extreme.TOP, game.j
    else:
        low_end, low_pos, high_end, high_pos = Extreme.TOP, game.j, Extreme.BOTTOM, 1
    low = prefix_extreme(game, R, p, low_end)
    if _ge(value_at(game, low), z):
        moved = list(low)
        moved[p - 1] = low_pos
        if not _ge(value_at(game, moved), z):
            return PivotClass.SECURER
    high = prefix_extreme(game, R, p, high_end)
    if not _ge(value_at(game, high), z):
        moved = list(high)
        moved[p - 1] = high_pos
        if _ge(value_at(game, moved), z):
            return PivotClass.BLOCKER
    return PivotClass.NONE


def classify_pivot(game: GameLadder, R: OrderedAllocation, i: int, p: int) -> PivotClass:
    """Which branch of the extreme test makes p i-pivotal in R, if any."""
    _require_monotone(game)
    _check_alloc(game, R)
    _check_player(R, p)
    return _extreme_class(game, R, level_value(game, i), p)


def is_pivotal_extremes(game: GameLadder, R: OrderedAllocation, i: int, p: int) -> bool:
    """Fast pivot test from the two prefix extremes; needs a monotone game."""
    return classify_pivot(game, R, i, p) is not PivotClass.NONE


def find_pivotal(game: GameLadder, R: OrderedAllocation, i: int) -> int:
    _require_monotone(game)
    _check_alloc(game, R)
    z = level_value(game, i)
    found = [p for p in R.order if _extreme_class(game, R, z, p) is not PivotClass.NONE]
    if not found:
        raise NoPivot(f"no {i}-pivotal player in {R}")
    if len(found) > 1:
        raise MultiplePivots(f"players {found} are all {i}-pivotal in {R}")
    return found[0]


# -- exhaustive counting ---------------------------------------------------------


@dataclass(frozen=True)
class PivotTable:
    """counts[row][p-1] is the number of allocations where p is pivotal at level_ids[row]."""

    levels: tuple
    level_ids: tuple
    counts: tuple
    total: int

    @property
    def n(self) -> int:
        return len(self.counts[0]) if self.counts else 0

    def count(self, i: int, p: int) -> int:
        return self.counts[self.level_ids.index(i)][p - 1]

    def by_player(self) -> tuple:
        """Per-player sum over the tabulated levels."""
        return tuple(sum(row[p] for row in self.counts) for p in range(self.n))

    def to_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "level_ids": list(self.level_ids),
            "counts": [list(row) for row in self.counts],
            "total_per_level": self.total,
        }


def _count_chunk(args):
    level_index, n, j, orders, mirrored, level_ids = args
    size = j**n
    powers = j ** np.arange(n, dtype=np.int64)
    idx = np.arange(size, dtype=np.int64)
    digit = [(idx // powers[u]) % j for u in range(n)]  # 0-based positions
    bottom_step = [digit[u] * powers[u] for u in range(n)]
    top_step = [(digit[u] - (j - 1)) * powers[u] for u in range(n)]
    top_start = int((j - 1) * powers.sum())
    counts = np.zeros((len(level_ids), n), dtype=np.int64)
    for order in orders:
        top = np.full(size, top_start, dtype=np.int64)
        bottom = np.zeros(size, dtype=np.int64)
        lt_prev = level_index[top]
        lb_prev = level_index[bottom]
        hits = np.zeros((len(level_ids), size), dtype=np.int8)
        for u in order:
            top = top + top_step[u]
            bottom = bottom + bottom_step[u]
            lt = level_index[top]
            lb = level_index[bottom]
            for row, i in enumerate(level_ids):
                # level index < i  <=>  output >= z_i
                if mirrored:
                    piv = ((lb < i) & (lb_prev >= i)) | ((lt >= i) & (lt_prev < i))
                else:
                    piv = ((lt < i) & (lt_prev >= i)) | ((lb >= i) & (lb_prev < i))
                counts[row, u] += int(np.count_nonzero(piv))
                hits[row] += piv
            lt_prev, lb_prev = lt, lb
        if (hits != 1).any():
            row, k = np.argwhere(hits != 1)[0]
            raise InternalInconsistency(
                f"entry order {tuple(u + 1 for u in order)}, profile index {k}: "
                f"{int(hits[row, k])} pivotal players at level {level_ids[row]}"
            )
    return counts


def pivot_counts(game: GameLadder, i: int | None = None, threads: int = 1) -> PivotTable:
    """Exact |R_ip+| for every player by enumerating all n! * j**n allocations.

    Uses the extreme test, so the game must be monotone in its declared
    orientation.  Every allocation is checked to have exactly one pivotal
    player per level.  Results do not depend on ``threads``.
    """
    _require_monotone(game)
    n, j = game.n, game.j
    levels = game.levels
    if len(levels) < 2:
        raise DegenerateRange("production function is constant; no pivot levels")
    total = math.factorial(n) * j**n
    check_size(total)
    level_ids = tuple(range(1, len(levels))) if i is None else (i,)
    for lid in level_ids:
        level_value(game, lid)
    orders = [tuple(u - 1 for u in o) for o in itertools.permutations(range(1, n + 1))]
    mirrored = game.orientation is Orientation.NON_DECREASING
    level_index = game.level_index
    if threads <= 1 or len(orders) < 2:
        counts = _count_chunk((level_index, n, j, orders, mirrored, level_ids))
    else:
        size = math.ceil(len(orders) / threads)
        chunks = [orders[k:k + size] for k in range(0, len(orders), size)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_count_chunk, [(level_index, n, j, c, mirrored, level_ids) for c in chunks]))
        counts = sum(parts[1:], parts[0])
    for row, lid in enumerate(level_ids):
        if int(counts[row].sum()) != total:
            raise InternalInconsistency(f"level {lid}: counts sum to {int(counts[row].sum())}, expected {total}")
    return PivotTable(levels, level_ids, tuple(tuple(int(c) for c in row) for row in counts), total)


# -- count monotonicity ------------------------------------------------------------------


@dataclass(frozen=True)
class Theorem2Report:
    """Count monotonicity along the influence relation, in both directions.

    ``violations`` lists (p, q, i, count_p, count_q) with p >= q but
    count_p < count_q.  ``reversed_violations`` does the same with the
    relation read backwards (q >= p required instead).
    """

    pairs_checked: int
    violations: list = field(default_factory=list)
    reversed_violations: list = field(default_factory=list)

    @property
    def as_stated(self) -> bool:
        return not self.violations

    @property
    def reversed(self) -> bool:
        return not self.reversed_violations

    def to_dict(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "as_stated": self.as_stated,
            "reversed": self.reversed,
            "violations": [list(v) for v in self.violations],
            "reversed_violations": [list(v) for v in self.reversed_violations],
        }


def theorem2_check(
    game: GameLadder,
    table: PivotTable | None = None,
    matrix: RelationMatrix | None = None,
    threads: int = 1,
) -> Theorem2Report:
    table = table or pivot_counts(game, threads=threads)
    matrix = matrix or relation_matrix(game)
    pairs = 0
    bad, bad_rev = [], []
    for p in range(1, game.n + 1):
        for q in range(1, game.n + 1):
            if p == q:
                continue
            for i in table.level_ids:
                cp, cq = table.count(i, p), table.count(i, q)
                if matrix.ge(p, q):
                    pairs += 1
                    if cp < cq:
                        bad.append((p, q, i, cp, cq))
                if matrix.ge(q, p) and cp < cq:
                    bad_rev.append((p, q, i, cp, cq))
    return Theorem2Report(pairs, bad, bad_rev)


def pivot_report(game: GameLadder, level: int | None = None, threads: int = 1) -> dict:
    table = pivot_counts(game, i=level, threads=threads)
    t2 = theorem2_check(game, table=table)
    out = table.to_dict()
    out["theorem2"] = t2.to_dict()
    return out
