"""Seeded random monotone games for property suites."""

from __future__ import annotations

import numpy as np

from .game import (
    DownSetIndicator,
    GameLadder,
    Orientation,
    UpSetIndicator,
    WeightedMultiLevel,
    dualize,
)

KINDS = ("downset", "upset", "weighted", "separable")


def _weighted(rng, n, j, k, separable):
    if separable:
        # w[p][t] = a_p * b_t with b increasing: the relation is complete
        a = rng.integers(1, 5, size=n)
        b = np.cumsum(rng.integers(1, 4, size=j))
        w = np.outer(a, b)
    else:
        w = np.cumsum(rng.integers(0, 4, size=(n, j)), axis=1)
    lo, hi = int(w[:, 0].sum()), int(w[:, -1].sum())
    if hi <= lo:
        return None
    cuts = rng.choice(np.arange(lo + 1, hi + 1), size=min(k - 1, hi - lo), replace=False)
    thresholds = tuple(int(t) for t in sorted(cuts, reverse=True))
    values = tuple(range(len(thresholds), -1, -1))
    rows = tuple(tuple(int(v) for v in row) for row in w)
    return WeightedMultiLevel(rows, thresholds, values)


def random_game(
    rng: np.random.Generator,
    n: int,
    j: int,
    kind: str,
    max_k: int = 3,
    orientation: Orientation = Orientation.NON_DECREASING,
) -> GameLadder:
    """One random monotone game of the given kind, carried into ``orientation``.

    May be constant; callers wanting pivot levels filter on ``len(game.levels)``.
    """
    if kind in ("downset", "upset"):
        gens = tuple(tuple(int(v) for v in rng.integers(1, j + 1, size=n)) for _ in range(rng.integers(1, 4)))
        if kind == "downset":
            game = GameLadder(n, j, Orientation.NON_INCREASING, DownSetIndicator(gens))
        else:
            game = GameLadder(n, j, Orientation.NON_DECREASING, UpSetIndicator(gens))
    else:
        k = int(rng.integers(2, max_k + 1))
        rep = _weighted(rng, n, j, k, kind == "separable")
        if rep is None:
            rep = WeightedMultiLevel(tuple((0,) * j for _ in range(n)), (), (0,))
        game = GameLadder(n, j, Orientation.NON_DECREASING, rep)
    if game.orientation is not orientation:
        game = dualize(game)
    return game


def random_suite(
    seed: int,
    count: int,
    max_n: int = 3,
    max_j: int = 3,
    max_k: int = 3,
    orientation: Orientation = Orientation.NON_DECREASING,
    nondegenerate: bool = True,
    kinds=KINDS,
    min_j: int = 2,
) -> list:
    """``count`` games cycling through ``kinds``; reproducible from ``seed``.

    With ``nondegenerate`` constant games are redrawn, so every game has at
    least one pivot level.
    """
    rng = np.random.default_rng(seed)
    games = []
    while len(games) < count:
        kind = kinds[len(games) % len(kinds)]
        n = int(rng.integers(2, max_n + 1))
        j = int(rng.integers(min_j, max_j + 1))
        game = random_game(rng, n, j, kind, max_k=max_k, orientation=orientation)
        if nondegenerate and len(game.levels) < 2:
            continue
        games.append(game)
    return games
