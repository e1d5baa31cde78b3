"""Challenge/swap dynamics on a ladder of players.

Each round sweeps the ladder bottom-up: the player on each rung challenges
every player above, nearest first, and takes the incumbent's rung when it
strictly dominates the incumbent.  Ties and incomparable pairs keep the
incumbent in place.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .errors import DimensionMismatch
from .game import GameLadder
from .influence import RelationMatrix, relation_matrix


class Termination(enum.Enum):
    STABLE = "stable"
    ROUND_LIMIT = "round_limit"
    CYCLE_DETECTED = "cycle_detected"


@dataclass(frozen=True)
class SwapEvent:
    round: int
    challenger: int
    incumbent: int
    rung: int  # rung the challenger takes, 1 = top

    def to_dict(self) -> dict:
        return {"round": self.round, "challenger": self.challenger, "incumbent": self.incumbent, "rung": self.rung}


@dataclass
class SimTrace:
    initial: tuple
    events: list = field(default_factory=list)
    final: tuple = ()
    termination: Termination = Termination.STABLE
    rounds: int = 0

    def replay(self) -> tuple:
        ladder = list(self.initial)
        for ev in self.events:
            lo, hi = ladder.index(ev.challenger), ladder.index(ev.incumbent)
            ladder[lo], ladder[hi] = ladder[hi], ladder[lo]
        return tuple(ladder)

    def json_lines(self) -> str:
        lines = [json.dumps({"initial": list(self.initial)})]
        lines += [json.dumps(ev.to_dict()) for ev in self.events]
        lines.append(json.dumps({
            "final": list(self.final),
            "termination": self.termination.value,
            "rounds": self.rounds,
            "swaps": len(self.events),
        }))
        return "\n".join(lines) + "\n"


def run_ladder(
    game: GameLadder,
    initial=None,
    max_rounds: int = 1000,
    matrix: RelationMatrix | None = None,
) -> SimTrace:
    """Simulate challenges until a quiet round, the round limit, or a repeated state.

    ``initial`` lists players from the top rung down; default 1..n.
    """
    m = matrix or relation_matrix(game)
    n = m.n
    ladder = list(initial) if initial is not None else list(range(1, n + 1))
    if sorted(ladder) != list(range(1, n + 1)):
        raise DimensionMismatch(f"initial ladder {ladder} is not a permutation of 1..{n}")
    trace = SimTrace(tuple(ladder))
    seen = {tuple(ladder)}
    rnd = 0
    while True:
        if rnd >= max_rounds:
            trace.termination = Termination.ROUND_LIMIT
            break
        rnd += 1
        swapped = False
        for low in range(n - 1, 0, -1):
            for high in range(low - 1, -1, -1):
                challenger, incumbent = ladder[low], ladder[high]
                if m.gt(challenger, incumbent):
                    ladder[low], ladder[high] = incumbent, challenger
                    trace.events.append(SwapEvent(rnd, challenger, incumbent, high + 1))
                    swapped = True
        if not swapped:
            trace.termination = Termination.STABLE
            break
        state = tuple(ladder)
        if state in seen:
            trace.termination = Termination.CYCLE_DETECTED
            break
        seen.add(state)
    trace.final = tuple(ladder)
    trace.rounds = rnd
    return trace
