"""Command-line front end.

Exit codes: 0 success, 1 a verified claim failed, 2 input error,
3 the requested analysis is not possible for this game.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DegenerateRange,
    DimensionMismatch,
    EnumerationLimit,
    GameFormatError,
    InvalidLevels,
    LevelOutOfRange,
    NotDominant,
    NotMonotone,
)
from .influence import PairClass, relation_matrix, relation_report
from .injection import verify_injection
from .io import export_table, load_game
from .pivot import Config, in_config, pivot_counts, theorem2_check
from .sim import run_ladder
from .verify import CLAIMS, parse_claims, run_suite

EXIT_OK, EXIT_CLAIM, EXIT_INPUT, EXIT_CAPABILITY = 0, 1, 2, 3

_SYMBOL = {
    PairClass.DOMINATES: ">",
    PairClass.DOMINATED: "<",
    PairClass.EQUIVALENT: "~",
    PairClass.INCOMPARABLE: "?",
}


def _fmt_players(ps) -> str:
    return "{" + ",".join(str(p) for p in ps) + "}"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_analyze(args, out) -> int:
    game = in_config(load_game(args.game), args.config)
    m = relation_matrix(game)
    report = relation_report(game, m)
    if args.json:
        report["pairs"] = {f"{p},{q}": m.pair_class(p, q).value for p in m.players() for q in m.players() if p != q}
        print(_dump(report), file=out)
        return EXIT_OK
    n = m.n
    print(f"game: {args.game} (n={game.n}, j={game.j}, {game.orientation.value}, config={args.config})", file=out)
    print("pair classes (row vs column; > dominates, < dominated, ~ equivalent, ? incomparable):", file=out)
    print("    " + " ".join(f"{q:>2}" for q in range(1, n + 1)), file=out)
    for p in range(1, n + 1):
        cells = [" ." if p == q else f"{_SYMBOL[m.pair_class(p, q)]:>2}" for q in range(1, n + 1)]
        print(f"{p:>3} " + " ".join(cells), file=out)
    if report["linear"]:
        print("linear: complete", file=out)
        print("layers: " + " > ".join(_fmt_players(layer) for layer in report["classes"]), file=out)
    else:
        w = report["witness"]
        print(f"linear: not complete; witness ({w[0]},{w[1]})", file=out)
        print("equivalence classes: " + " ".join(_fmt_players(c) for c in report["classes"]), file=out)
    viol = report["violations"]["transitivity"]
    if viol:
        print("transitivity violations: " + " ".join(f"({a},{b},{c})" for a, b, c in viol), file=out)
    else:
        print("transitivity violations: none", file=out)
    return EXIT_OK


def cmd_pivots(args, out) -> int:
    game = in_config(load_game(args.game), args.config)
    table = pivot_counts(game, i=args.level, threads=args.threads)
    t2 = theorem2_check(game, table=table)
    if args.json:
        rep = table.to_dict()
        rep["theorem2"] = t2.to_dict()
        print(_dump(rep), file=out)
        return EXIT_OK
    print(f"game: {args.game} (n={game.n}, j={game.j}, {game.orientation.value}, config={args.config})", file=out)
    print("levels: " + ", ".join(str(z) for z in table.levels), file=out)
    print("level  " + " ".join(f"{'p' + str(p):>10}" for p in range(1, game.n + 1)) + "        sum", file=out)
    for i, row in zip(table.level_ids, table.counts):
        print(f"{i:>5}  " + " ".join(f"{c:>10}" for c in row) + f" {sum(row):>10}", file=out)
    print(f"sum check: every level sums to n!*j^n = {table.total}", file=out)
    for label, ok, viol in (("as_stated", t2.as_stated, t2.violations), ("reversed", t2.reversed, t2.reversed_violations)):
        line = f"theorem2 {label}: {'pass' if ok else 'fail'}"
        if viol:
            p, q, i, cp, cq = viol[0]
            line += f" witness ({p},{q},i={i}) counts {cp} < {cq}"
        print(line, file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.injection:
        if not args.game:
            raise GameFormatError("--injection needs a game")
        p, q, i = args.injection
        rep = verify_injection(load_game(args.game), p, q, i, config=args.config, literal=args.literal)
        if args.json:
            print(_dump(rep.to_dict()), file=out)
        else:
            print(f"injection p={p} q={q} i={i} (config={args.config}{', literal' if args.literal else ''})", file=out)
            print(f"domain size: {rep.domain_size}", file=out)
            print(f"image size: {rep.image_size}", file=out)
            print(f"target size: {rep.target_size}", file=out)
            print(f"well-definedness failures: {len(rep.well_defined_failures)}", file=out)
            print(f"injectivity collisions: {len(rep.injectivity_collisions)}", file=out)
            print("result: " + ("pass" if rep.ok else "fail"), file=out)
        return EXIT_OK if rep.ok else EXIT_CLAIM
    try:
        claims = parse_claims(args.claims)
    except ValueError as exc:
        raise GameFormatError(str(exc)) from None
    game = load_game(args.game) if args.game else None
    if game is None and not args.random_games:
        raise GameFormatError("give a game, --random-games, or both")
    result = run_suite(
        game, claims, config=args.config, seed=args.seed, random_games=args.random_games,
        threads=args.threads, literal=args.literal,
    )
    if args.json:
        print(_dump(result.to_dict()), file=out)
    else:
        for name, res in result.claims.items():
            line = f"{name}: {res.status}"
            if res.reason:
                line += f" ({res.reason})"
            if res.witnesses:
                line += " witness " + json.dumps(res.witnesses[0], separators=(",", ":"))
            print(line, file=out)
    return EXIT_CLAIM if result.failed else EXIT_OK


def cmd_simulate(args, out) -> int:
    game = in_config(load_game(args.game), args.config)
    initial = None
    if args.initial:
        try:
            initial = [int(v) for v in args.initial.split(",")]
        except ValueError:
            raise GameFormatError(f"bad --initial {args.initial!r}") from None
    trace = run_ladder(game, initial, max_rounds=args.max_rounds)
    if args.json:
        out.write(trace.json_lines())
        return EXIT_OK
    print("initial: " + " ".join(str(p) for p in trace.initial), file=out)
    for ev in trace.events:
        print(f"round {ev.round}: {ev.challenger} displaces {ev.incumbent} at rung {ev.rung}", file=out)
    print("final: " + " ".join(str(p) for p in trace.final), file=out)
    print(f"termination: {trace.termination.value} after {trace.rounds} rounds, {len(trace.events)} swaps", file=out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    game = load_game(args.game)
    out.write(export_table(game))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ladder", description="Exact analysis of game ladders.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, game_required=True):
        if game_required:
            p.add_argument("game", help="game JSON file or builtin:<name>")
        p.add_argument("--config", choices=[c.value for c in Config], default=Config.CANONICAL.value,
                       help="analysis world (default: canonical)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="influence relation, linearity, layers")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pivots", help="exact pivot counts and count monotonicity")
    common(p)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_pivots)

    p = sub.add_parser("verify", help="check claims on a game and/or random games")
    p.add_argument("game", nargs="?", default=None)
    common(p, game_required=False)
    p.add_argument("--claims", default=None, help="comma list from: " + ",".join(CLAIMS) + " (lemma1 accepted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-games", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--injection", type=int, nargs=3, metavar=("P", "Q", "I"))
    p.add_argument("--literal", action="store_true", help="compare raw positions in the swap table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run the challenge/swap ladder")
    common(p)
    p.add_argument("--initial", default=None, help="comma list of players, top rung first")
    p.add_argument("--max-rounds", type=int, default=1000)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table", help="export the output table as text")
    p.add_argument("game")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (GameFormatError, DimensionMismatch, InvalidLevels, LevelOutOfRange, NotDominant) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateRange, EnumerationLimit, NotMonotone) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY


if __name__ == "__main__":
    sys.exit(main())
