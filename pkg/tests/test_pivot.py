import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import oracle_counts, oracle_pivotal
from ladder.errors import DegenerateRange, DimensionMismatch, LevelOutOfRange, NotMonotone
from ladder.game import (
    ExplicitTable,
    GameLadder,
    Orientation,
    cap21,
    cap_dual,
    constant,
    dualize,
    evaluate,
    prop2_game,
    unanimity,
)
from ladder.io import table_from_function
from ladder.pivot import (
    Config,
    Extreme,
    OrderedAllocation,
    agreement_profiles,
    PivotClass,
    all_allocations,
    classify_pivot,
    find_pivotal,
    in_config,
    is_pivotal_bruteforce,
    is_pivotal_extremes,
    pivot_counts,
    prefix_extreme,
    theorem2_check,
)
from ladder.randgames import KINDS, random_game

# recorded from the first run and cross-checked for invariance under dualize
PROP2_COUNTS = (723960, 584604, 305892, 3259584, 3259584, 1444428, 1444428)


def A(order, profile):
    return OrderedAllocation(tuple(order), tuple(profile))


def games(max_n=3):
    return st.tuples(
        st.integers(0, 2**32 - 1), st.integers(1, max_n), st.integers(2, 3), st.sampled_from(KINDS),
        st.sampled_from(list(Orientation)),
    ).map(lambda t: random_game(np.random.default_rng(t[0]), t[1], t[2], t[3], orientation=t[4])).filter(
        lambda g: len(g.levels) > 1
    )


def symmetric_game():
    return table_from_function(3, 3, lambda x: sorted(x)[1] >= 2, Orientation.NON_DECREASING)


class TestAllocation:
    def test_rank_and_prec(self):
        R = A((3, 1, 2), (1, 1, 1))
        assert R.rank(3) == 1 and R.rank(2) == 3
        assert R.prec(3) is None and R.prec(1) == 3
        assert R.later(1) == (2,)

    def test_bad_order(self):
        with pytest.raises(DimensionMismatch):
            A((1, 1), (1, 1))

    def test_enumeration_size(self):
        assert len(list(all_allocations(3, 2))) == 6 * 8


class TestPrefixExtreme:
    def test_last_entrant_unchanged(self):
        R = A((1, 2), (2, 1))
        for end in Extreme:
            assert prefix_extreme(cap_dual(), R, 2, end) == (2, 1)

    def test_first_entrant(self):
        R = A((1, 2), (2, 1))
        assert prefix_extreme(cap_dual(), R, 1, Extreme.TOP) == (2, 2)
        assert prefix_extreme(cap_dual(), R, 1, Extreme.BOTTOM) == (2, 1)

    def test_second_player_first(self):
        assert prefix_extreme(cap_dual(), A((2, 1), (1, 1)), 2, Extreme.TOP) == (2, 1)


class TestBruteforce:
    def test_capdual(self):
        R = A((1, 2), (2, 1))
        assert is_pivotal_bruteforce(cap_dual(), R, 1, 2)
        assert not is_pivotal_bruteforce(cap_dual(), R, 1, 1)

    def test_constant_has_no_levels(self):
        R = A((1, 2), (1, 1))
        for i in (0, 1, 2):
            with pytest.raises(LevelOutOfRange):
                is_pivotal_bruteforce(constant(2, 2), R, i, 1)


class TestExtremes:
    def test_cap21_printed_form(self):
        assert is_pivotal_extremes(cap21(), A((2, 1), (1, 1)), 1, 2)

    def test_capdual_securer(self):
        R = A((1, 2), (2, 2))
        assert is_pivotal_extremes(cap_dual(), R, 1, 2)
        assert classify_pivot(cap_dual(), R, 1, 2) is PivotClass.SECURER

    def test_capdual_blocker(self):
        assert classify_pivot(cap_dual(), A((1, 2), (2, 1)), 1, 2) is PivotClass.BLOCKER

    def test_capdual_player_one_never(self):
        for R in all_allocations(2, 2):
            assert not is_pivotal_extremes(cap_dual(), R, 1, 1)
            assert classify_pivot(cap_dual(), R, 1, 1) is PivotClass.NONE

    def test_requires_monotone(self):
        g = GameLadder(2, 2, Orientation.NON_DECREASING, ExplicitTable((0, 1, 1, 0)))
        with pytest.raises(NotMonotone):
            is_pivotal_extremes(g, A((1, 2), (1, 1)), 1, 1)

    @given(games())
    @settings(max_examples=40, deadline=None)
    def test_matches_bruteforce(self, game):
        for g in (game, dualize(game)):
            for R in all_allocations(g.n, g.j):
                for i in range(1, len(g.levels)):
                    for p in range(1, g.n + 1):
                        assert is_pivotal_extremes(g, R, i, p) == is_pivotal_bruteforce(g, R, i, p)


class TestFindPivotal:
    def test_capdual(self):
        assert find_pivotal(cap_dual(), A((1, 2), (2, 1)), 1) == 2

    @pytest.mark.parametrize("n", [2, 3])
    def test_unanimity_all_top(self, n):
        g = unanimity(n, 2)
        for order in itertools.permutations(range(1, n + 1)):
            assert find_pivotal(g, A(order, (2,) * n), 1) == order[-1]

    @pytest.mark.parametrize("n", [2, 3])
    def test_unanimity_first_below_top(self, n):
        g = unanimity(n, 3)
        for x in itertools.product(range(1, 4), repeat=n):
            if x[0] < 3:
                R = A(range(1, n + 1), x)
                assert find_pivotal(g, R, 1) == 1 == oracle_pivotal(g, R.order, x, 1)

    @given(games())
    @settings(max_examples=40, deadline=None)
    def test_matches_oracle(self, game):
        for R in all_allocations(game.n, game.j):
            for i in range(1, len(game.levels)):
                assert find_pivotal(game, R, i) == oracle_pivotal(game, R.order, R.profile, i)


class TestCounts:
    def test_capdual(self):
        t = pivot_counts(cap_dual())
        assert t.counts == ((0, 8),)
        assert t.total == 8

    def test_cap21(self):
        assert pivot_counts(cap21()).counts == ((0, 8),)

    def test_symmetric_equal(self):
        t = pivot_counts(symmetric_game())
        assert all(len(set(row)) == 1 for row in t.counts)

    def test_constant_degenerate(self):
        with pytest.raises(DegenerateRange):
            pivot_counts(constant(2, 2))

    def test_level_selection(self):
        g = table_from_function(2, 3, lambda x: min(x) - 1, Orientation.NON_DECREASING)
        full = pivot_counts(g)
        assert full.level_ids == (1, 2)
        assert pivot_counts(g, i=2).counts == (full.counts[1],)
        with pytest.raises(LevelOutOfRange):
            pivot_counts(g, i=3)

    @given(games())
    @settings(max_examples=40, deadline=None)
    def test_matches_oracle(self, game):
        t = pivot_counts(game)
        assert np.array_equal(np.array(t.counts), oracle_counts(game))
        for row in t.counts:
            assert sum(row) == math.factorial(game.n) * game.j**game.n

    @given(games())
    @settings(max_examples=30, deadline=None)
    def test_dualize_invariant(self, game):
        assert pivot_counts(game).counts == pivot_counts(dualize(game)).counts

    def test_parallel_identical(self):
        g = random_game(np.random.default_rng(5), 4, 3, "weighted", max_k=3)
        assert pivot_counts(g, threads=3) == pivot_counts(g)

    @pytest.mark.slow
    def test_prop2_golden(self):
        for g in (prop2_game(), dualize(prop2_game())):
            t = pivot_counts(g)
            assert t.counts == (PROP2_COUNTS,)
            assert sum(PROP2_COUNTS) == 5040 * 2187 == 11_022_480


class TestTheorem2:
    def test_capdual_holds(self):
        rep = theorem2_check(cap_dual())
        assert rep.as_stated and not rep.reversed

    def test_cap21_printed_violation(self):
        g = in_config(cap21(), Config.PRINTED)
        rep = theorem2_check(g)
        assert rep.violations == [(1, 2, 1, 0, 8)]
        assert rep.reversed

    def test_cap21_canonical_holds(self):
        assert theorem2_check(in_config(cap21(), Config.CANONICAL)).as_stated

    def test_symmetric(self):
        rep = theorem2_check(symmetric_game())
        assert rep.as_stated and rep.reversed
        assert rep.pairs_checked == 6 * (len(symmetric_game().levels) - 1)

    @given(games(max_n=4))
    @settings(max_examples=40, deadline=None)
    def test_canonical_random(self, game):
        assert theorem2_check(in_config(game, Config.CANONICAL)).as_stated


class TestInvariants:
    @given(games())
    @settings(max_examples=30, deadline=None)
    def test_completions_between_prefix_extremes(self, game):
        for R in all_allocations(game.n, game.j):
            for p in range(1, game.n + 1):
                lo = prefix_extreme(game, R, p, Extreme.BOTTOM)
                hi = prefix_extreme(game, R, p, Extreme.TOP)
                for x in agreement_profiles(game, R, p):
                    assert all(a <= v <= b for a, v, b in zip(lo, x, hi))

    @given(games(), st.data())
    @settings(max_examples=30, deadline=None)
    def test_counts_conjugate_under_relabelling(self, game, data):
        perm = data.draw(st.permutations(range(1, game.n + 1)))
        h = table_from_function(
            game.n, game.j, lambda x: evaluate(game, tuple(x[perm[p] - 1] for p in range(game.n))), game.orientation
        )
        old, new = pivot_counts(game), pivot_counts(h)
        for row_old, row_new in zip(old.counts, new.counts):
            assert all(row_new[perm[p] - 1] == row_old[p] for p in range(game.n))
