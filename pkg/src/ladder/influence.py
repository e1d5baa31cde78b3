"""Beating relations between players and the global influence relation.

p beats q between levels r > s when, for every profile with both players at s,
moving p up to r yields at least as much output as moving q up to r.  p is
globally at least as influential as q when that holds for every level pair.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InternalInconsistency, InvalidLevels, NotLinear
from .game import TOLERANCE, GameLadder, check_size, decode, evaluate


class PairClass(enum.Enum):
    DOMINATES = "dominates"
    DOMINATED = "dominated"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class LocalResult:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _check_players(game: GameLadder, p: int, q: int) -> None:
    for v in (p, q):
        if not 1 <= v <= game.n:
            raise DimensionMismatch(f"player {v} outside [1, {game.n}]")
    if p == q:
        raise DimensionMismatch("players must differ")


def beats_local(game: GameLadder, p: int, q: int, r: int, s: int, lazy: bool = False) -> LocalResult:
    """Does p beat q at level r relative to level s?

    ``lazy`` evaluates the representation's formula per profile instead of
    reading the precomputed output table; both paths give the same answer.
    The witness is the first violating base profile in canonical order.
    """
    _check_players(game, p, q)
    if not (1 <= s < r <= game.j):
        raise InvalidLevels(f"need 1 <= s < r <= {game.j}, got r={r}, s={s}")
    if lazy:
        return _beats_local_lazy(game, p, q, r, s)
    d = game.digits
    base = np.nonzero((d[:, p - 1] == s) & (d[:, q - 1] == s))[0]
    t = game.table
    up_p = t[base + (r - s) * game.powers[p - 1]]
    up_q = t[base + (r - s) * game.powers[q - 1]]
    bad = up_p < up_q - TOLERANCE
    if bad.any():
        return LocalResult(False, decode(int(base[np.argmax(bad)]), game.n, game.j))
    return LocalResult(True)


def _beats_local_lazy(game, p, q, r, s):
    others = [u for u in range(game.n) if u not in (p - 1, q - 1)]
    # reversed product keeps canonical order (player 1 least significant)
    for rest in itertools.product(range(1, game.j + 1), repeat=len(others)):
        x = [s] * game.n
        for u, v in zip(others, reversed(rest)):
            x[u] = v
        xp = list(x)
        xp[p - 1] = r
        xq = list(x)
        xq[q - 1] = r
        if evaluate(game, xp) < evaluate(game, xq) - TOLERANCE:
            return LocalResult(False, tuple(x))
    return LocalResult(True)


def global_geq(game: GameLadder, p: int, q: int, lazy: bool = False) -> bool:
    """p is at least as influential as q at every pair of levels."""
    _check_players(game, p, q)
    for s in range(1, game.j):
        for r in range(s + 1, game.j + 1):
            if not beats_local(game, p, q, r, s, lazy=lazy):
                return False
    return True


def classify(geq_pq: bool, geq_qp: bool) -> PairClass:
    if geq_pq and geq_qp:
        return PairClass.EQUIVALENT
    if geq_pq:
        return PairClass.DOMINATES
    if geq_qp:
        return PairClass.DOMINATED
    return PairClass.INCOMPARABLE


@dataclass(frozen=True)
class RelationMatrix:
    """geq[p-1][q-1] is True when p is at least as influential as q."""

    geq: tuple

    @property
    def n(self) -> int:
        return len(self.geq)

    def ge(self, p: int, q: int) -> bool:
        return self.geq[p - 1][q - 1]

    def gt(self, p: int, q: int) -> bool:
        return self.ge(p, q) and not self.ge(q, p)

    def eq(self, p: int, q: int) -> bool:
        return self.ge(p, q) and self.ge(q, p)

    def pair_class(self, p: int, q: int) -> PairClass:
        return classify(self.ge(p, q), self.ge(q, p))

    def players(self):
        return range(1, self.n + 1)

    def incomparable_pairs(self) -> list:
        return [
            (p, q) for p in self.players() for q in self.players()
            if p < q and not self.ge(p, q) and not self.ge(q, p)
        ]

    def permuted(self, perm) -> "RelationMatrix":
        """Relabel players: new player perm[p-1] plays the role of old player p."""
        n = self.n
        out = [[False] * n for _ in range(n)]
        for p in range(n):
            for q in range(n):
                out[perm[p] - 1][perm[q] - 1] = self.geq[p][q]
        return RelationMatrix(tuple(tuple(r) for r in out))


def relation_matrix(game: GameLadder, lazy: bool = False) -> RelationMatrix:
    if not lazy:
        check_size(game.size)
    rows = []
    for p in range(1, game.n + 1):
        rows.append(tuple(p == q or global_geq(game, p, q, lazy=lazy) for q in range(1, game.n + 1)))
    return RelationMatrix(tuple(rows))


@dataclass(frozen=True)
class LinearityReport:
    linear: bool
    witness: tuple | None = None


def is_linear(game_or_matrix) -> LinearityReport:
    m = game_or_matrix if isinstance(game_or_matrix, RelationMatrix) else relation_matrix(game_or_matrix)
    bad = m.incomparable_pairs()
    return LinearityReport(not bad, bad[0] if bad else None)


def transitivity_violations(m: RelationMatrix, strict: bool = False) -> list:
    """Triples (p, q, r) with p >= q, q >= r and not p >= r.

    With ``strict`` the asymmetric part is checked instead.
    """
    rel = m.gt if strict else m.ge
    out = []
    for p, q, r in itertools.permutations(m.players(), 3):
        if rel(p, q) and rel(q, r) and not rel(p, r):
            out.append((p, q, r))
    return out


def mixed_transitivity_violations(m: RelationMatrix) -> list:
    """Violations of: p > q ~ r implies p > r, and p ~ q > r implies p > r."""
    out = []
    for p, q, r in itertools.permutations(m.players(), 3):
        if m.gt(p, q) and m.eq(q, r) and not m.gt(p, r):
            out.append(("strict-then-equivalent", p, q, r))
        if m.eq(p, q) and m.gt(q, r) and not m.gt(p, r):
            out.append(("equivalent-then-strict", p, q, r))
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    reflexive: bool
    symmetric: bool
    transitive: bool
    violations: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive


def check_equivalence(m: RelationMatrix) -> EquivalenceReport:
    """Audit the symmetric part of the relation as an equivalence relation."""
    refl = [p for p in m.players() if not m.eq(p, p)]
    sym = [(p, q) for p, q in itertools.permutations(m.players(), 2) if m.eq(p, q) != m.eq(q, p)]
    trans = [
        (p, q, r) for p, q, r in itertools.permutations(m.players(), 3)
        if m.eq(p, q) and m.eq(q, r) and not m.eq(p, r)
    ]
    return EquivalenceReport(
        not refl, not sym, not trans,
        {"reflexive": refl, "symmetric": sym, "transitive": trans},
    )


@dataclass(frozen=True)
class LayerDecomposition:
    layers: tuple  # tuple of tuples of players, strongest layer first

    def layer_of(self, p: int) -> int:
        for k, layer in enumerate(self.layers):
            if p in layer:
                return k
        raise KeyError(p)


def equivalence_classes(m: RelationMatrix) -> list:
    """Classes of mutually equivalent players, in order of smallest member."""
    classes = []
    for p in m.players():
        for c in classes:
            if m.eq(p, c[0]):
                c.append(p)
                break
        else:
            classes.append([p])
    return [tuple(c) for c in classes]


def layers(game_or_matrix) -> LayerDecomposition:
    """Ordered partition into equivalence classes, strongest first.

    Raises NotLinear for an incomplete relation and InternalInconsistency if
    the quotient by equivalence is not a transitive tournament.
    """
    m = game_or_matrix if isinstance(game_or_matrix, RelationMatrix) else relation_matrix(game_or_matrix)
    lin = is_linear(m)
    if not lin.linear:
        raise NotLinear(lin.witness)
    classes = [list(c) for c in equivalence_classes(m)]
    for c in classes:
        for a, b in itertools.combinations(c, 2):
            if not m.eq(a, b):
                raise InternalInconsistency(f"equivalence class {c} is not closed: {a} vs {b}")
    reps = [c[0] for c in classes]
    for a, b in itertools.permutations(range(len(classes)), 2):
        for u in classes[a]:
            for v in classes[b]:
                if m.gt(reps[a], reps[b]) != m.gt(u, v):
                    raise InternalInconsistency(f"dominance between layers {classes[a]} and {classes[b]} is not uniform")
    for a, b in itertools.combinations(range(len(classes)), 2):
        if m.gt(reps[a], reps[b]) == m.gt(reps[b], reps[a]):
            raise InternalInconsistency(f"layers {classes[a]} and {classes[b]} are not strictly ordered")
    for a, b, c in itertools.permutations(range(len(classes)), 3):
        if m.gt(reps[a], reps[b]) and m.gt(reps[b], reps[c]) and not m.gt(reps[a], reps[c]):
            raise InternalInconsistency(f"layer dominance is not transitive at {reps[a]}, {reps[b]}, {reps[c]}")
    # in a transitive tournament the number of dominated classes fixes the rank
    wins = [sum(m.gt(reps[a], reps[b]) for b in range(len(classes))) for a in range(len(classes))]
    order = sorted(range(len(classes)), key=lambda a: -wins[a])
    return LayerDecomposition(tuple(tuple(classes[a]) for a in order))


def relation_report(game: GameLadder, m: RelationMatrix | None = None) -> dict:
    """Machine-readable relation summary."""
    m = m or relation_matrix(game)
    lin = is_linear(m)
    report = {
        "geq": [list(row) for row in m.geq],
        "classes": [list(c) for c in equivalence_classes(m)],
        "linear": lin.linear,
        "violations": {"transitivity": [list(t) for t in transitivity_violations(m)]},
    }
    if lin.linear:
        report["classes"] = [list(layer) for layer in layers(m).layers]
    else:
        report["witness"] = list(lin.witness)
    return report
