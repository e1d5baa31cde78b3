"""Game files (JSON) and output-table text export."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GameFormatError
from .game import (
    DownSetIndicator,
    ExplicitTable,
    GameLadder,
    Orientation,
    UpSetIndicator,
    WeightedMultiLevel,
    _tidy,
    all_profiles,
    builtin,
    validate_monotone,
)

TABLE_HEADER = "ladder-table v1"


def _require(obj, key, kind, where):
    if key not in obj:
        raise GameFormatError(f"missing key {key!r}", field=where + key)
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise GameFormatError(f"expected integer, got {val!r}", field=where + key)
    if kind is list and not isinstance(val, list):
        raise GameFormatError(f"expected list, got {type(val).__name__}", field=where + key)
    if kind is dict and not isinstance(val, dict):
        raise GameFormatError(f"expected object, got {type(val).__name__}", field=where + key)
    return val


def _number(v, field):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise GameFormatError(f"expected number, got {v!r}", field=field)
    return v


def _profiles(rows, field):
    out = []
    for k, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise GameFormatError(f"generator must be a list of integers, got {row!r}", field=f"{field}[{k}]")
        out.append(tuple(row))
    return tuple(out)


def game_from_dict(data: dict, name: str = "") -> GameLadder:
    if not isinstance(data, dict):
        raise GameFormatError("game file must contain a JSON object")
    n = _require(data, "players", int, "")
    j = _require(data, "levels", int, "")
    raw_or = _require(data, "orientation", str, "")
    try:
        orientation = Orientation(raw_or)
    except ValueError:
        raise GameFormatError(
            f"orientation must be 'non_decreasing' or 'non_increasing', got {raw_or!r}", field="orientation"
        ) from None
    rep = _require(data, "representation", dict, "")
    kind = _require(rep, "kind", str, "representation.")
    where = "representation."
    if kind == "explicit":
        outputs = _require(rep, "outputs", list, where)
        rep_obj = ExplicitTable(tuple(_number(v, f"{where}outputs") for v in outputs))
    elif kind in ("downset", "upset"):
        gens = _profiles(_require(rep, "generators", list, where), where + "generators")
        inside = _number(rep.get("inside", 1), where + "inside")
        outside = _number(rep.get("outside", 0), where + "outside")
        cls = DownSetIndicator if kind == "downset" else UpSetIndicator
        rep_obj = cls(gens, inside, outside)
    elif kind == "weighted":
        weights = _require(rep, "weights", list, where)
        rows = []
        for k, row in enumerate(weights):
            if not isinstance(row, list):
                raise GameFormatError("weight row must be a list", field=f"{where}weights[{k}]")
            rows.append(tuple(_number(v, f"{where}weights[{k}]") for v in row))
        thresholds = tuple(_number(v, where + "thresholds") for v in _require(rep, "thresholds", list, where))
        values = tuple(_number(v, where + "values") for v in _require(rep, "values", list, where))
        rep_obj = WeightedMultiLevel(tuple(rows), thresholds, values)
    else:
        raise GameFormatError(f"unknown representation kind {kind!r}", field="representation.kind")
    return GameLadder(n, j, orientation, rep_obj, name=name)


def game_to_dict(game: GameLadder) -> dict:
    rep = game.representation
    if isinstance(rep, ExplicitTable):
        body = {"kind": "explicit", "outputs": list(rep.outputs)}
    elif isinstance(rep, (DownSetIndicator, UpSetIndicator)):
        body = {
            "kind": "downset" if isinstance(rep, DownSetIndicator) else "upset",
            "generators": [list(g) for g in rep.generators],
            "inside": rep.inside,
            "outside": rep.outside,
        }
    else:
        body = {
            "kind": "weighted",
            "weights": [list(r) for r in rep.weights],
            "thresholds": list(rep.thresholds),
            "values": list(rep.values),
        }
    return {"players": game.n, "levels": game.j, "orientation": game.orientation.value, "representation": body}


def load_game(source: str) -> GameLadder:
    """Load a game from a JSON file path or a ``builtin:<name>`` reference."""
    if source.startswith("builtin:"):
        return builtin(source[len("builtin:"):])
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GameFormatError(f"cannot read {source}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    return game_from_dict(data, name=path.stem)


def save_game(game: GameLadder, path) -> None:
    Path(path).write_text(json.dumps(game_to_dict(game), indent=2) + "\n")


def export_table(game: GameLadder) -> str:
    lines = [f"{TABLE_HEADER} n={game.n} j={game.j}"]
    lines.extend(repr(_tidy(v)) for v in game.table)
    return "\n".join(lines) + "\n"


def import_table(text: str, orientation: Orientation | None = None) -> GameLadder:
    """Parse an exported table into an explicit game.

    Without an explicit orientation, the first one the table satisfies is used
    (non-decreasing preferred); a table satisfying neither is declared
    non-decreasing and will fail validation downstream.
    """
    lines = text.splitlines()
    if not lines:
        raise GameFormatError("empty table", line=1)
    head = lines[0].split()
    if len(head) != 4 or " ".join(head[:2]) != TABLE_HEADER:
        raise GameFormatError(f"bad header {lines[0]!r}", line=1)
    try:
        n = int(head[2].removeprefix("n="))
        j = int(head[3].removeprefix("j="))
    except ValueError:
        raise GameFormatError(f"bad header {lines[0]!r}", line=1) from None
    values = []
    for k, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            values.append(_tidy(float(line)))
        except ValueError:
            raise GameFormatError(f"not a number: {line!r}", line=k) from None
    rep = ExplicitTable(tuple(values))
    if orientation is not None:
        return GameLadder(n, j, orientation, rep)
    game = GameLadder(n, j, Orientation.NON_DECREASING, rep)
    if not validate_monotone(game).holds and validate_monotone(game, Orientation.NON_INCREASING).holds:
        game = GameLadder(n, j, Orientation.NON_INCREASING, rep)
    return game


def table_from_function(n: int, j: int, func, orientation: Orientation) -> GameLadder:
    """Explicit game from a Python callable over profiles."""
    return GameLadder(n, j, orientation, ExplicitTable(tuple(func(x) for x in all_profiles(n, j))))
