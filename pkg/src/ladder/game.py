"""Game ladders (N, T, f): representation, evaluation and profile arithmetic.

Players are labelled 1..n and position types 1..j throughout the public API.
A profile is a plain tuple of length n whose entry at index p-1 is the
position of player p.  Profiles are enumerated in mixed-radix order with
player 1 as the least significant digit::

    encode(x) = sum((x[p] - 1) * j**p for p in range(n))
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .errors import DimensionMismatch, EnumerationLimit, GameFormatError

DEFAULT_ENUM_CAP = 20_000_000
TOLERANCE = 1e-9

Profile = tuple


def enum_cap() -> int:
    """Enumeration cap, overridable with LADDER_ENUM_CAP."""
    raw = os.environ.get("LADDER_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    return int(raw)


def check_size(size: int) -> None:
    cap = enum_cap()
    if size > cap:
        raise EnumerationLimit(size, cap)


class Orientation(enum.Enum):
    NON_DECREASING = "non_decreasing"
    NON_INCREASING = "non_increasing"

    def flipped(self) -> "Orientation":
        if self is Orientation.NON_DECREASING:
            return Orientation.NON_INCREASING
        return Orientation.NON_DECREASING


# -- representations ---------------------------------------------------------


@dataclass(frozen=True)
class ExplicitTable:
    outputs: tuple


@dataclass(frozen=True)
class DownSetIndicator:
    """f(x) = inside if x <= g for some generator g, else outside."""

    generators: tuple
    inside: float = 1
    outside: float = 0


@dataclass(frozen=True)
class UpSetIndicator:
    """f(x) = inside if x >= g for some generator g, else outside."""

    generators: tuple
    inside: float = 1
    outside: float = 0


@dataclass(frozen=True)
class WeightedMultiLevel:
    """f(x) is values[i] for the first threshold with sum_p w[p][x_p] >= thresholds[i].

    ``values`` has one more entry than ``thresholds``; its last entry is the
    output when no threshold is met.
    """

    weights: tuple
    thresholds: tuple
    values: tuple


Representation = Union[ExplicitTable, DownSetIndicator, UpSetIndicator, WeightedMultiLevel]


def _leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normalize_generators(generators, upward: bool) -> tuple:
    """Reduce a generator set to its antichain in canonical order.

    For down-sets only maximal generators matter, for up-sets only minimal ones.
    """
    gens = sorted({tuple(int(v) for v in g) for g in generators})
    keep = []
    for g in gens:
        if upward:
            dominated = any(h != g and _leq(h, g) for h in gens)
        else:
            dominated = any(h != g and _leq(g, h) for h in gens)
        if not dominated:
            keep.append(g)
    # canonical profile order: player 1 least significant
    keep.sort(key=lambda g: tuple(reversed(g)))
    return tuple(keep)


# -- the game ------------------------------------------------------------------


@dataclass(frozen=True)
class GameLadder:
    n: int
    j: int
    orientation: Orientation
    representation: Representation
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GameFormatError("player count must be >= 1", field="players")
        if self.j < 2:
            raise GameFormatError("level count must be >= 2", field="levels")
        rep = self.representation
        if isinstance(rep, ExplicitTable):
            if len(rep.outputs) != self.j**self.n:
                raise GameFormatError(
                    f"explicit table needs {self.j ** self.n} outputs, got {len(rep.outputs)}",
                    field="representation.outputs",
                )
        elif isinstance(rep, (DownSetIndicator, UpSetIndicator)):
            for g in rep.generators:
                _check_profile_dims(g, self.n, self.j)
            upward = isinstance(rep, UpSetIndicator)
            object.__setattr__(
                self, "representation",
                type(rep)(normalize_generators(rep.generators, upward), rep.inside, rep.outside),
            )
        elif isinstance(rep, WeightedMultiLevel):
            if len(rep.weights) != self.n or any(len(row) != self.j for row in rep.weights):
                raise GameFormatError("weights must be an n x j matrix", field="representation.weights")
            th = list(rep.thresholds)
            vals = list(rep.values)
            if any(a <= b for a, b in zip(th, th[1:])):
                raise GameFormatError("thresholds must be strictly decreasing", field="representation.thresholds")
            if len(vals) != len(th) + 1:
                raise GameFormatError(
                    "values needs exactly one entry more than thresholds", field="representation.values"
                )
            if any(a <= b for a, b in zip(vals, vals[1:])):
                raise GameFormatError("values must be strictly decreasing", field="representation.values")
        else:
            raise GameFormatError(f"unknown representation {type(rep).__name__}")

    @property
    def size(self) -> int:
        """Number of profiles, j**n."""
        return self.j**self.n

    @cached_property
    def powers(self) -> np.ndarray:
        return self.j ** np.arange(self.n, dtype=np.int64)

    @cached_property
    def digits(self) -> np.ndarray:
        """All profiles as a (j**n, n) array of positions in canonical order."""
        check_size(self.size)
        idx = np.arange(self.size, dtype=np.int64)
        return ((idx[:, None] // self.powers[None, :]) % self.j + 1).astype(np.int8)

    @cached_property
    def table(self) -> np.ndarray:
        """Output of every profile in canonical order (float64)."""
        check_size(self.size)
        rep = self.representation
        if isinstance(rep, ExplicitTable):
            return np.asarray(rep.outputs, dtype=np.float64)
        d = self.digits
        if isinstance(rep, (DownSetIndicator, UpSetIndicator)):
            hit = np.zeros(self.size, dtype=bool)
            for g in rep.generators:
                g = np.asarray(g, dtype=np.int8)
                hit |= np.all(d <= g if isinstance(rep, DownSetIndicator) else d >= g, axis=1)
            return np.where(hit, float(rep.inside), float(rep.outside))
        w = np.asarray(rep.weights, dtype=np.float64)
        total = w[np.arange(self.n)[None, :], d.astype(np.int64) - 1].sum(axis=1)
        out = np.full(self.size, float(rep.values[-1]))
        # walk thresholds from the lowest up so the highest one met wins
        for t, v in reversed(list(zip(rep.thresholds, rep.values))):
            out[total >= t] = float(v)
        return out

    @cached_property
    def levels(self) -> tuple:
        return output_levels(self)

    @cached_property
    def level_index(self) -> np.ndarray:
        """0-based level of every profile: 0 for z_1 (the highest output)."""
        z = np.asarray(self.levels, dtype=np.float64)
        t = self.table
        # levels are sorted descending; match within tolerance
        idx = np.zeros(self.size, dtype=np.int64)
        for i, v in enumerate(z):
            idx[np.abs(t - v) <= TOLERANCE] = i
        return idx

    @cached_property
    def monotone_report(self) -> "MonotoneReport":
        return validate_monotone(self)


def _check_profile_dims(x, n: int, j: int) -> None:
    if len(x) != n:
        raise DimensionMismatch(f"profile {tuple(x)} has length {len(x)}, expected {n}")
    for v in x:
        if not (1 <= v <= j):
            raise DimensionMismatch(f"profile {tuple(x)} has entry {v} outside [1, {j}]")


def check_profile(game: GameLadder, x) -> Profile:
    _check_profile_dims(x, game.n, game.j)
    return tuple(int(v) for v in x)


def encode(x: Sequence[int], j: int) -> int:
    return sum((v - 1) * j**p for p, v in enumerate(x))


def decode(index: int, n: int, j: int) -> Profile:
    out = []
    for _ in range(n):
        index, r = divmod(index, j)
        out.append(r + 1)
    return tuple(out)


def all_profiles(n: int, j: int):
    """Yield every profile in canonical order."""
    for rev in itertools.product(range(1, j + 1), repeat=n):
        yield tuple(reversed(rev))


def evaluate(game: GameLadder, x) -> float:
    """Output of profile x, computed from the representation's formula."""
    x = check_profile(game, x)
    rep = game.representation
    if isinstance(rep, ExplicitTable):
        return rep.outputs[encode(x, game.j)]
    if isinstance(rep, DownSetIndicator):
        return rep.inside if any(_leq(x, g) for g in rep.generators) else rep.outside
    if isinstance(rep, UpSetIndicator):
        return rep.inside if any(_leq(g, x) for g in rep.generators) else rep.outside
    total = sum(rep.weights[p][v - 1] for p, v in enumerate(x))
    for t, v in zip(rep.thresholds, rep.values):
        if total >= t:
            return v
    return rep.values[-1]


def value_at(game: GameLadder, x) -> float:
    """Table lookup; same result as evaluate but O(1) once the table exists."""
    return float(game.table[encode(x, game.j)])


def promote(x, p: int, r: int, j: int | None = None) -> Profile:
    """Return x with player p moved to position r (x + (r - x_p) e^p)."""
    n = len(x)
    if not 1 <= p <= n:
        raise DimensionMismatch(f"player {p} outside [1, {n}]")
    if r < 1 or (j is not None and r > j):
        raise DimensionMismatch(f"position {r} outside [1, {j}]")
    y = list(x)
    y[p - 1] = r
    return tuple(y)


def reverse_profile(x, j: int) -> Profile:
    return tuple(j + 1 - v for v in x)


# -- monotonicity ----------------------------------------------------------------


@dataclass(frozen=True)
class MonotoneReport:
    holds: bool
    witness: tuple | None = None  # (lower profile, covering profile)


def validate_monotone(game: GameLadder, orientation: Orientation | None = None) -> MonotoneReport:
    """Check f against an orientation on every covering pair of profiles."""
    orientation = orientation or game.orientation
    t = game.table
    d = game.digits
    for p in range(game.n):
        lo = np.nonzero(d[:, p] < game.j)[0]
        hi = lo + game.powers[p]
        if orientation is Orientation.NON_DECREASING:
            bad = t[lo] > t[hi] + TOLERANCE
        else:
            bad = t[lo] < t[hi] - TOLERANCE
        if bad.any():
            k = int(np.argmax(bad))
            return MonotoneReport(
                False, (decode(int(lo[k]), game.n, game.j), decode(int(hi[k]), game.n, game.j))
            )
    return MonotoneReport(True)


# -- levels and duality ---------------------------------------------------------


def output_levels(game: GameLadder) -> tuple:
    """Distinct outputs sorted descending; values within TOLERANCE merge."""
    check_size(game.size)
    vals = np.unique(game.table)[::-1]
    levels = []
    for v in vals:
        if levels and abs(levels[-1] - v) <= TOLERANCE:
            continue
        levels.append(float(v))
    return tuple(_tidy(v) for v in levels)


def _tidy(v):
    v = float(v)
    return int(v) if v.is_integer() else v


def dualize(game: GameLadder) -> GameLadder:
    """Game g with g(x) = f(j+1-x); orientation flipped."""
    j = game.j
    rep = game.representation
    if isinstance(rep, ExplicitTable):
        out = tuple(rep.outputs[encode(reverse_profile(x, j), j)] for x in all_profiles(game.n, j))
        new = ExplicitTable(out)
    elif isinstance(rep, DownSetIndicator):
        new = UpSetIndicator(tuple(reverse_profile(g, j) for g in rep.generators), rep.inside, rep.outside)
    elif isinstance(rep, UpSetIndicator):
        new = DownSetIndicator(tuple(reverse_profile(g, j) for g in rep.generators), rep.inside, rep.outside)
    else:
        new = WeightedMultiLevel(tuple(tuple(reversed(row)) for row in rep.weights), rep.thresholds, rep.values)
    name = game.name[:-5] if game.name.endswith(":dual") else (game.name + ":dual" if game.name else "")
    return GameLadder(game.n, j, game.orientation.flipped(), new, name=name)


def with_orientation(game: GameLadder, orientation: Orientation) -> GameLadder:
    """Return game itself or its dual, whichever carries the requested orientation."""
    return game if game.orientation is orientation else dualize(game)


# -- built-in games ------------------------------------------------------------------

PROP2_GENERATORS = (
    (3, 1, 2, 1, 1, 2, 2),
    (1, 3, 2, 1, 1, 2, 2),
    (1, 2, 3, 1, 1, 2, 2),
)


def prop2_game() -> GameLadder:
    """Seven players, three levels, indicator of the down-set of three generators."""
    return GameLadder(7, 3, Orientation.NON_INCREASING, DownSetIndicator(PROP2_GENERATORS), name="prop2")


def cap21() -> GameLadder:
    """Two players, two levels: f(x) = 1 iff x <= (2, 1)."""
    return GameLadder(2, 2, Orientation.NON_INCREASING, DownSetIndicator(((2, 1),)), name="cap21")


def cap_dual() -> GameLadder:
    """Dual of cap21: f(x) = 1 iff x >= (1, 2)."""
    return GameLadder(2, 2, Orientation.NON_DECREASING, UpSetIndicator(((1, 2),)), name="cap-dual")


def unanimity(n: int, j: int) -> GameLadder:
    """f(x) = 1 iff every player sits at the top position j."""
    return GameLadder(n, j, Orientation.NON_DECREASING, UpSetIndicator(((j,) * n,)), name=f"unanimity:{n}:{j}")


def constant(n: int, j: int, value: float = 0) -> GameLadder:
    return GameLadder(
        n, j, Orientation.NON_DECREASING, ExplicitTable((value,) * j**n), name=f"constant:{n}:{j}"
    )


def builtin(spec: str) -> GameLadder:
    """Resolve ``prop2``, ``cap21``, ``cap-dual``, ``unanimity:n:j`` or ``constant:n:j[:v]``."""
    parts = spec.split(":")
    head = parts[0]
    try:
        if head == "prop2" and len(parts) == 1:
            return prop2_game()
        if head == "cap21" and len(parts) == 1:
            return cap21()
        if head in ("cap-dual", "capdual") and len(parts) == 1:
            return cap_dual()
        if head == "unanimity" and len(parts) == 3:
            return unanimity(int(parts[1]), int(parts[2]))
        if head == "constant" and len(parts) in (3, 4):
            v = float(parts[3]) if len(parts) == 4 else 0
            return constant(int(parts[1]), int(parts[2]), _tidy(v))
    except ValueError as exc:
        raise GameFormatError(f"bad builtin game {spec!r}: {exc}") from None
    raise GameFormatError(f"unknown builtin game {spec!r}")


def factorial_size(game: GameLadder) -> int:
    """Number of ordered allocations, n! * j**n."""
    return math.factorial(game.n) * game.size
