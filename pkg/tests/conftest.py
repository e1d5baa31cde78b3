"""Independent brute-force oracles shared by the test modules.

These deliberately use only ``evaluate`` and itertools, never the table
kernels they are checked against.
"""

import itertools

import numpy as np
import pytest

from ladder.game import Orientation, evaluate, output_levels


def oracle_geq(game, p, q):
    """p beats q at every level pair, by direct enumeration of profiles."""
    j, n = game.j, game.n
    others = [u for u in range(1, n + 1) if u not in (p, q)]
    for s in range(1, j + 1):
        for r in range(s + 1, j + 1):
            for vals in itertools.product(range(1, j + 1), repeat=len(others)):
                x = [0] * n
                for u, v in zip(others, vals):
                    x[u - 1] = v
                xp = list(x)
                xp[p - 1], xp[q - 1] = r, s
                xq = list(x)
                xq[p - 1], xq[q - 1] = s, r
                if evaluate(game, tuple(xp)) < evaluate(game, tuple(xq)) - 1e-9:
                    return False
    return True


def oracle_monotone(game):
    sign = 1 if game.orientation is Orientation.NON_DECREASING else -1
    for x in itertools.product(range(1, game.j + 1), repeat=game.n):
        for p in range(game.n):
            if x[p] < game.j:
                y = list(x)
                y[p] += 1
                if sign * (evaluate(game, tuple(y)) - evaluate(game, x)) < -1e-9:
                    return False
    return True


def _settled(game, fixed, z):
    """'ge' if every completion of the partial profile reaches z, 'lt' if none does, else None."""
    free = [u for u in range(game.n) if fixed[u] is None]
    seen = set()
    for vals in itertools.product(range(1, game.j + 1), repeat=len(free)):
        x = list(fixed)
        for u, v in zip(free, vals):
            x[u] = v
        seen.add(evaluate(game, tuple(x)) >= z - 1e-9)
    if seen == {True}:
        return "ge"
    if seen == {False}:
        return "lt"
    return None


def oracle_pivotal(game, order, profile, i):
    """The i-pivotal player: first entrant after whom the outcome relative to z_i is settled."""
    z = output_levels(game)[i - 1]
    fixed = [None] * game.n
    for p in order:
        fixed[p - 1] = profile[p - 1]
        if _settled(game, fixed, z):
            return p
    raise AssertionError("outcome unsettled after every entrant")


def oracle_counts(game):
    """counts[i-1][p-1] for every pivot level, by walking all allocations."""
    k = len(output_levels(game))
    counts = np.zeros((k - 1, game.n), dtype=int)
    for order in itertools.permutations(range(1, game.n + 1)):
        for x in itertools.product(range(1, game.j + 1), repeat=game.n):
            for i in range(1, k):
                counts[i - 1, oracle_pivotal(game, order, x, i) - 1] += 1
    return counts


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
