"""Game documents, shapes and seeded random games.

A game document is JSON::

    {
      "schema": "nonstrat-game/1",
      "players": 2,
      "actions": [["C", "D"], ["C", "D"]],
      "utilities": ["3.0", "3.0", "0.0", "4.0", ...],
      "metadata": {"description": "..."}
    }

``utilities`` is flat: profiles in row-major order with player 0's action
most significant, and within a profile one payoff per player.  Payoffs are
written as shortest round-trip decimal strings (``repr(float)``), so parsing
a serialized game returns bit-identical payoffs.  Plain JSON numbers are
accepted on input.

Random games draw iid standard-normal payoffs from numpy's PCG64 generator,
seeded through ``SeedSequence``; this pairing is part of schema version 1.
"""

from __future__ import annotations

import json
import math
from typing import Optional, Sequence

import numpy as np

from .game import GameError, NormalFormGame

SCHEMA = "nonstrat-game/1"
RNG_ALGORITHM = "numpy.PCG64/SeedSequence"


class GameFormatError(GameError):
    """A game document that cannot be parsed; the message names the field."""


def game_to_dict(game: NormalFormGame, metadata: Optional[dict] = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "players": game.num_players,
        "actions": [list(a) for a in game.action_names],
        "utilities": [repr(float(v)) for v in game.utilities.ravel()],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def serialize_game(game: NormalFormGame, metadata: Optional[dict] = None) -> str:
    return json.dumps(game_to_dict(game, metadata), indent=2) + "\n"


def _payoff(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise GameFormatError(f"{path}: payoff must be a decimal string or number, got {value!r}")
    try:
        v = float(value)
    except ValueError:
        raise GameFormatError(f"{path}: cannot parse payoff {value!r}") from None
    if not math.isfinite(v):
        raise GameFormatError(f"{path}: non-finite payoff {value!r}")
    return v


def game_from_dict(doc) -> NormalFormGame:
    if not isinstance(doc, dict):
        raise GameFormatError("document: expected a JSON object")
    schema = doc.get("schema")
    if schema != SCHEMA:
        raise GameFormatError(f"schema: expected {SCHEMA!r}, got {schema!r}")
    n = doc.get("players")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise GameFormatError(f"players: expected a positive integer, got {n!r}")
    actions = doc.get("actions")
    if not isinstance(actions, list) or len(actions) != n:
        raise GameFormatError(f"actions: expected a list of {n} action lists")
    for j, acts in enumerate(actions):
        if not isinstance(acts, list) or not acts:
            raise GameFormatError(f"actions[{j}]: expected a non-empty list of labels")
        for k, a in enumerate(acts):
            if not isinstance(a, str):
                raise GameFormatError(f"actions[{j}][{k}]: labels must be strings")
        if len(set(acts)) != len(acts):
            raise GameFormatError(f"actions[{j}]: duplicate labels")
    sizes = tuple(len(a) for a in actions)
    flat = doc.get("utilities")
    expected = math.prod(sizes) * n
    if not isinstance(flat, list) or len(flat) != expected:
        got = len(flat) if isinstance(flat, list) else type(flat).__name__
        raise GameFormatError(f"utilities: expected a list of {expected} payoffs, got {got}")
    values = [_payoff(v, f"utilities[{k}]") for k, v in enumerate(flat)]
    u = np.array(values, dtype=np.float64).reshape(sizes + (n,))
    return NormalFormGame(tuple(tuple(a) for a in actions), u)


def parse_game(text: str) -> NormalFormGame:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return game_from_dict(doc)


def load_game(path) -> NormalFormGame:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def parse_shape(text: str) -> tuple[int, ...]:
    """``"PxA1x...xAP"`` to per-player action counts, e.g. ``"2x3x3"`` -> ``(3, 3)``."""
    try:
        parts = [int(p) for p in text.lower().split("x")]
    except ValueError:
        raise GameError(f"bad shape {text!r}; expected PxA1x...xAP") from None
    players, counts = parts[0], tuple(parts[1:])
    if players < 1 or len(counts) != players or any(k < 1 for k in counts):
        raise GameError(f"bad shape {text!r}; expected PxA1x...xAP")
    return counts


def format_shape(shape: Sequence[int]) -> str:
    return "x".join(str(k) for k in (len(shape), *shape))


def default_names(shape: Sequence[int]) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(f"a{k}" for k in range(size)) for size in shape)


def make_rng(*seed) -> np.random.Generator:
    """Generator for a seed or a tuple of seed components."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(seed))))


def random_game_from(rng: np.random.Generator, shape: Sequence[int]) -> NormalFormGame:
    shape = tuple(int(k) for k in shape)
    u = rng.standard_normal(shape + (len(shape),))
    return NormalFormGame(default_names(shape), u)


def random_game(shape: Sequence[int], seed: int) -> NormalFormGame:
    """Game with iid standard-normal payoffs; the same seed gives the same game."""
    return random_game_from(make_rng(seed), shape)
