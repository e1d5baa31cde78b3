"""Swap constructions and the correspondence between pivot sets of two players.

Given p at least as influential as q, every allocation where q is i-pivotal is
mapped to one where p should be i-pivotal, either by exchanging only the
entry ranks of p and q or by exchanging both ranks and positions.  The choice
is made by a three-way table keyed on how the positions of p and q compare.
``verify_injection`` runs the map over its whole domain and records every
image that misses the target set and every collision.

Position comparisons in the table are read on the scale of a non-increasing
game.  For a non-decreasing game that scale is the reversed one (j + 1 - x),
which is what carries the construction across ``dualize``.  Pass
``literal=True`` to compare raw positions instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import DimensionMismatch, NotDominant, NotInDomain
from .game import GameLadder, Orientation, check_size, factorial_size
from .influence import global_geq
from .pivot import (
    Config,
    Extreme,
    OrderedAllocation,
    PivotClass,
    _require_monotone,
    all_allocations,
    classify_pivot,
    in_config,
    is_pivotal_extremes,
    level_value,
    prefix_extreme,
)


def _swap_ranks(order, p, q):
    return tuple(q if u == p else p if u == q else u for u in order)


def swap_full(R: OrderedAllocation, p: int, q: int) -> OrderedAllocation:
    """Exchange both the entry ranks and the positions of p and q."""
    if p == q:
        raise DimensionMismatch("players must differ")
    x = list(R.profile)
    x[p - 1], x[q - 1] = x[q - 1], x[p - 1]
    return OrderedAllocation(_swap_ranks(R.order, p, q), tuple(x))


def swap_order_only(R: OrderedAllocation, p: int, q: int) -> OrderedAllocation:
    """Exchange the entry ranks of p and q; positions stay put."""
    if p == q:
        raise DimensionMismatch("players must differ")
    return OrderedAllocation(_swap_ranks(R.order, p, q), R.profile)


def swap_positions(R: OrderedAllocation, p: int, q: int) -> OrderedAllocation:
    """Same entry order, positions of p and q exchanged."""
    x = list(R.profile)
    x[p - 1], x[q - 1] = x[q - 1], x[p - 1]
    return OrderedAllocation(R.order, tuple(x))


def _scale(game: GameLadder, v: int, literal: bool) -> int:
    if literal or game.orientation is Orientation.NON_INCREASING:
        return v
    return game.j + 1 - v


def _compare(game, R, p, q, literal) -> int:
    a = _scale(game, R.profile[p - 1], literal)
    b = _scale(game, R.profile[q - 1], literal)
    return (a > b) - (a < b)


@dataclass(frozen=True)
class DMembership:
    in_D_plus: bool
    in_D_minus: bool


def d_membership(game: GameLadder, R: OrderedAllocation, i: int, p: int, q: int, literal: bool = False) -> DMembership:
    """Membership of R in the two D-sets for the pair (p, q).

    D+ : R and its position-swapped twin are both securer-pivotal for q and
    p sits above q.  D- : both blocker-pivotal for q and p sits below q.
    """
    if p == q:
        raise DimensionMismatch("players must differ")
    cmp = _compare(game, R, p, q, literal)
    if cmp == 0:
        return DMembership(False, False)
    cls = classify_pivot(game, R, i, q)
    if cls is PivotClass.NONE:
        return DMembership(False, False)
    twin = classify_pivot(game, swap_positions(R, p, q), i, q)
    plus = cls is PivotClass.SECURER and twin is PivotClass.SECURER and cmp > 0
    minus = cls is PivotClass.BLOCKER and twin is PivotClass.BLOCKER and cmp < 0
    return DMembership(plus, minus)


def psi(game: GameLadder, R: OrderedAllocation, i: int, p: int, q: int, literal: bool = False) -> OrderedAllocation:
    cls = classify_pivot(game, R, i, q)
    if cls is PivotClass.NONE:
        raise NotInDomain(f"player {q} is not {i}-pivotal in {R}")
    cmp = _compare(game, R, p, q, literal)
    if cmp == 0:
        return swap_full(R, p, q)
    d = d_membership(game, R, i, p, q, literal)
    if cmp < 0:
        keep_positions = cls is PivotClass.SECURER or d.in_D_minus
    else:
        keep_positions = cls is PivotClass.BLOCKER or d.in_D_plus
    return swap_order_only(R, p, q) if keep_positions else swap_full(R, p, q)


@dataclass
class InjectionReport:
    p: int
    q: int
    i: int
    domain_size: int = 0
    image_size: int = 0
    target_size: int = 0
    well_defined_failures: list = field(default_factory=list)
    injectivity_collisions: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.well_defined_failures and not self.injectivity_collisions

    def to_dict(self) -> dict:
        def enc(R):
            return {"order": list(R.order), "profile": list(R.profile)}

        return {
            "p": self.p,
            "q": self.q,
            "i": self.i,
            "domain_size": self.domain_size,
            "image_size": self.image_size,
            "target_size": self.target_size,
            "well_defined_failures": [{"from": enc(a), "to": enc(b)} for a, b in self.well_defined_failures],
            "injectivity_collisions": [
                {"from": [enc(a), enc(b)], "to": enc(c)} for a, b, c in self.injectivity_collisions
            ],
        }


def verify_injection(
    game: GameLadder,
    p: int,
    q: int,
    i: int,
    config=None,
    literal: bool = False,
    check_dominance: bool = True,
) -> InjectionReport:
    """Apply psi to every allocation where q is i-pivotal and audit the images.

    ``config`` first moves the game into that world (see ``Config``).
    """
    if config is not None:
        game = in_config(game, config)
    _require_monotone(game)
    level_value(game, i)
    check_size(factorial_size(game))
    if check_dominance and not global_geq(game, p, q):
        raise NotDominant(f"player {p} is not at least as influential as player {q}")
    report = InjectionReport(p, q, i)
    target = set()
    domain = []
    for R in all_allocations(game.n, game.j):
        if is_pivotal_extremes(game, R, i, p):
            target.add(R)
        if is_pivotal_extremes(game, R, i, q):
            domain.append(R)
    seen = {}
    for R in domain:
        image = psi(game, R, i, p, q, literal)
        if image not in target:
            report.well_defined_failures.append((R, image))
        if image in seen:
            report.injectivity_collisions.append((seen[image], R, image))
        else:
            seen[image] = R
    report.domain_size = len(domain)
    report.image_size = len(seen)
    report.target_size = len(target)
    return report


def verify_all_injections(game: GameLadder, config=Config.CANONICAL, literal: bool = False) -> list:
    """verify_injection for every dominating ordered pair and every level."""
    game = in_config(game, config)
    out = []
    for p, q in itertools.permutations(range(1, game.n + 1), 2):
        if not global_geq(game, p, q):
            continue
        for i in range(1, len(game.levels)):
            out.append(verify_injection(game, p, q, i, literal=literal, check_dominance=False))
    return out


# -- supporting identities -----------------------------------------------------------


def _set(x, p, v):
    y = list(x)
    y[p - 1] = v
    return tuple(y)


def _swap_xy(x, p, q):
    y = list(x)
    y[p - 1], y[q - 1] = y[q - 1], y[p - 1]
    return tuple(y)


def swap_identities(game: GameLadder, R: OrderedAllocation, p: int, q: int) -> dict:
    """Evaluate the profile identities relating prefix extremes before and after swaps.

    Returns {name: bool}; every entry should be True for every allocation.
    Only the identities whose rank hypothesis matches R are included.
    """
    r, s = R.profile[p - 1], R.profile[q - 1]
    R0 = swap_order_only(R, p, q)
    Rf = swap_full(R, p, q)
    out = {}
    for end, fill in ((Extreme.TOP, game.j), (Extreme.BOTTOM, 1)):
        tag = end.value
        xq = prefix_extreme(game, R, q, end)
        xpf = prefix_extreme(game, Rf, p, end)
        if R.rank(p) < R.rank(q):
            out[f"order-swap-{tag}"] = xq == prefix_extreme(game, R0, p, end)
            out[f"full-swap-{tag}"] = _swap_xy(xq, p, q) == xpf
            out[f"full-swap-moved-{tag}"] = _set(_set(xq, q, r), p, fill) == _set(xpf, p, fill)
        else:
            out[f"late-p-moved-{tag}"] = _set(xpf, p, fill) == _set(xq, q, fill)
            out[f"late-p-{tag}"] = _set(_set(xq, q, fill), p, s) == xpf
    return out


def swap_lemma_checks(game: GameLadder, R: OrderedAllocation, i: int, p: int, q: int) -> list:
    """Check the swap-membership lemmas on one allocation.

    Returns (lemma, conclusion_holds) for every lemma whose hypotheses hold.
    Positions are compared on the same scale as ``psi``.
    """
    cls = classify_pivot(game, R, i, q)
    if cls is PivotClass.NONE:
        return []
    cmp = _compare(game, R, p, q, False)
    early = R.rank(p) < R.rank(q)
    full = swap_full(R, p, q)
    order_only = swap_order_only(R, p, q)
    out = []
    if cls is PivotClass.SECURER:
        if (early and cmp > 0) or not early:
            out.append(("securer-full-swap", is_pivotal_extremes(game, full, i, p)))
        if early:
            twin = classify_pivot(game, swap_positions(R, p, q), i, q)
            if cmp <= 0 or twin is PivotClass.SECURER:
                out.append(("securer-order-swap", classify_pivot(game, order_only, i, p) is PivotClass.SECURER))
    else:
        if (early and cmp < 0) or not early:
            out.append(("blocker-full-swap", is_pivotal_extremes(game, full, i, p)))
        if early:
            twin = classify_pivot(game, swap_positions(R, p, q), i, q)
            if cmp >= 0 or twin is PivotClass.BLOCKER:
                out.append(("blocker-order-swap", classify_pivot(game, order_only, i, p) is PivotClass.BLOCKER))
    return out
