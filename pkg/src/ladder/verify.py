"""Claim-by-claim verification of a game, or of a seeded batch of random games."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import DegenerateRange, EnumerationLimit, InternalInconsistency, NotMonotone
from .game import GameLadder, dualize
from .influence import (
    check_equivalence,
    is_linear,
    layers,
    mixed_transitivity_violations,
    relation_matrix,
    transitivity_violations,
)
from .injection import verify_all_injections
from .pivot import (
    Config,
    OrderedAllocation,
    all_allocations,
    find_pivotal,
    in_config,
    is_pivotal_bruteforce,
    is_pivotal_extremes,
    theorem2_check,
)
from .randgames import random_suite

CLAIMS = (
    "prop1", "prop2", "prop3", "prop4", "prop5", "prop6",
    "theorem1", "theorem2", "lemma1_equivalence", "injection", "two_level",
)
ALIASES = {"lemma1": "lemma1_equivalence", "injection_lab": "injection"}

# allocation budget for the per-allocation claims (oracle and injection sweeps)
EXHAUSTIVE_LIMIT = 20_000

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def parse_claims(text: str | None) -> tuple:
    if not text:
        return CLAIMS
    out = []
    for raw in text.split(","):
        name = ALIASES.get(raw.strip(), raw.strip())
        if name not in CLAIMS:
            raise ValueError(f"unknown claim {raw.strip()!r}; choose from {', '.join(CLAIMS)}")
        if name not in out:
            out.append(name)
    return tuple(out)


@dataclass
class ClaimResult:
    status: str
    reason: str = ""
    witnesses: list = field(default_factory=list)
    games: int = 0  # games on which the claim was actually exercised

    def to_dict(self) -> dict:
        d = {"status": self.status, "games": self.games, "witnesses": self.witnesses}
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass
class VerificationSuiteResult:
    claims: dict  # name -> ClaimResult, in request order

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.claims.values())

    def to_dict(self) -> dict:
        return {name: c.to_dict() for name, c in self.claims.items()}


def _alloc(R: OrderedAllocation) -> dict:
    return {"order": list(R.order), "profile": list(R.profile)}


def lemma1_mismatches(game: GameLadder, limit: int | None = None) -> list:
    """Allocations where the extreme test and brute-force enumeration disagree."""
    out = []
    for R in all_allocations(game.n, game.j):
        for i in range(1, len(game.levels)):
            for p in range(1, game.n + 1):
                if is_pivotal_extremes(game, R, i, p) != is_pivotal_bruteforce(game, R, i, p):
                    out.append((R, i, p))
                    if limit and len(out) >= limit:
                        return out
    return out


def uniqueness_failures(game: GameLadder) -> list:
    out = []
    for R in all_allocations(game.n, game.j):
        for i in range(1, len(game.levels)):
            try:
                find_pivotal(game, R, i)
            except InternalInconsistency as exc:
                out.append((R, i, str(exc)))
    return out


def _check_one(name: str, game: GameLadder, m, threads: int, literal: bool) -> ClaimResult:
    lin = is_linear(m)
    allocations = math.factorial(game.n) * game.size
    if name == "prop1":
        rep = check_equivalence(m)
        if rep.holds:
            return ClaimResult(PASS)
        return ClaimResult(FAIL, witnesses=[{k: v for k, v in rep.violations.items() if v}])
    if name == "prop2":
        if lin.linear:
            return ClaimResult(SKIPPED, "relation is complete on this game")
        return ClaimResult(PASS, witnesses=[{"incomparable": list(lin.witness)}])
    if name == "prop3":
        viol = transitivity_violations(m)
        if not viol:
            return ClaimResult(SKIPPED, "relation is transitive on this game")
        return ClaimResult(PASS, witnesses=[{"violation": list(viol[0])}])
    if name in ("prop4", "prop5", "prop6", "theorem1"):
        if not lin.linear:
            return ClaimResult(SKIPPED, "game is not linear")
        if name == "prop4":
            viol = transitivity_violations(m)
        elif name == "prop5":
            viol = mixed_transitivity_violations(m)
        elif name == "prop6":
            viol = transitivity_violations(m, strict=True)
        else:
            try:
                layers(m)
                viol = []
            except InternalInconsistency as exc:
                viol = [str(exc)]
        if viol:
            return ClaimResult(FAIL, witnesses=[list(v) if isinstance(v, tuple) else v for v in viol])
        return ClaimResult(PASS)
    if name == "two_level":
        if game.j != 2:
            return ClaimResult(SKIPPED, "game has more than two levels")
        viol = transitivity_violations(m)
        return ClaimResult(FAIL, witnesses=[list(v) for v in viol]) if viol else ClaimResult(PASS)
    if name == "theorem2":
        try:
            rep = theorem2_check(game, matrix=m, threads=threads)
        except (DegenerateRange, EnumerationLimit, NotMonotone) as exc:
            return ClaimResult(SKIPPED, str(exc))
        if rep.as_stated:
            return ClaimResult(PASS)
        return ClaimResult(FAIL, witnesses=[list(v) for v in rep.violations[:5]])
    if len(game.levels) < 2:
        return ClaimResult(SKIPPED, "constant game has no pivot levels")
    if not game.monotone_report.holds:
        return ClaimResult(SKIPPED, "game is not monotone in its declared orientation")
    if allocations > EXHAUSTIVE_LIMIT:
        return ClaimResult(SKIPPED, f"{allocations} allocations exceed the exhaustive limit {EXHAUSTIVE_LIMIT}")
    if name == "lemma1_equivalence":
        bad = []
        for g in (game, dualize(game)):
            bad += [{"orientation": g.orientation.value, "allocation": _alloc(R), "i": i, "p": p}
                    for R, i, p in lemma1_mismatches(g, limit=5)]
            bad += [{"orientation": g.orientation.value, "allocation": _alloc(R), "i": i, "error": e}
                    for R, i, e in uniqueness_failures(g)[:5]]
        return ClaimResult(FAIL, witnesses=bad) if bad else ClaimResult(PASS)
    if name == "injection":
        bad = []
        for rep in verify_all_injections(game, config=Config(game_config(game)), literal=literal):
            if not rep.ok:
                bad.append({
                    "p": rep.p, "q": rep.q, "i": rep.i,
                    "well_defined_failures": len(rep.well_defined_failures),
                    "collisions": len(rep.injectivity_collisions),
                })
        return ClaimResult(FAIL, witnesses=bad) if bad else ClaimResult(PASS)
    raise ValueError(name)


def game_config(game: GameLadder) -> str:
    return Config.CANONICAL.value if game.orientation is Config.CANONICAL.orientation else Config.PRINTED.value


def verify_game(game: GameLadder, claims=CLAIMS, threads: int = 1, literal: bool = False) -> dict:
    """Run each claim on one game as given (no change of orientation)."""
    m = relation_matrix(game)
    return {name: _check_one(name, game, m, threads, literal) for name in claims}


_EXISTENTIAL = ("prop2", "prop3")


def _merge(name: str, results: list) -> ClaimResult:
    ran = [r for r in results if r.status != SKIPPED]
    if not ran:
        reason = results[0].reason if len(results) == 1 else "skipped on every game"
        return ClaimResult(SKIPPED, reason)
    fails = [r for r in ran if r.status == FAIL]
    if fails:
        return ClaimResult(FAIL, witnesses=list(itertools.chain.from_iterable(r.witnesses for r in fails))[:10],
                           games=len(ran))
    wit = list(itertools.chain.from_iterable(r.witnesses for r in ran))
    return ClaimResult(PASS, witnesses=wit[:1] if name in _EXISTENTIAL else [], games=len(ran))


def run_suite(
    game: GameLadder | None = None,
    claims=CLAIMS,
    config=Config.CANONICAL,
    seed: int = 0,
    random_games: int = 0,
    threads: int = 1,
    literal: bool = False,
) -> VerificationSuiteResult:
    """Verify claims on ``game`` and/or ``random_games`` seeded random games.

    Every game is first moved into the ``config`` world.
    """
    games = []
    if game is not None:
        games.append(in_config(game, config))
    if random_games:
        games += [in_config(g, config) for g in random_suite(seed, random_games)]
    per_claim = {name: [] for name in claims}
    for g in games:
        for name, res in verify_game(g, claims, threads, literal).items():
            res.games = 0 if res.status == SKIPPED else 1
            per_claim[name].append(res)
    return VerificationSuiteResult({name: _merge(name, rs) if rs else ClaimResult(SKIPPED, "no games")
                                    for name, rs in per_claim.items()})

