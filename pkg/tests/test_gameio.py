import json

import numpy as np
import pytest

from nonstrat import GameError, parse_game, random_game, serialize_game
from nonstrat.gameio import (GameFormatError, format_shape, game_to_dict, load_game, make_rng,
                             parse_shape, random_game_from)


def test_prisoners_dilemma_document(pd):
    doc = game_to_dict(pd)
    assert doc["schema"] == "nonstrat-game/1"
    assert doc["players"] == 2
    assert doc["actions"] == [["C", "D"], ["C", "D"]]
    assert doc["utilities"] == ["3.0", "3.0", "0.0", "4.0", "4.0", "0.0", "1.0", "1.0"]
    text = serialize_game(pd, {"description": "pd"})
    assert text.endswith("}\n")
    assert json.loads(text)["metadata"] == {"description": "pd"}


def test_round_trip_is_byte_identical():
    for k in range(1000):
        rng = make_rng(17, k)
        n = int(rng.integers(1, 4))
        shape = tuple(int(v) for v in rng.integers(1, 5, size=n))
        g = random_game_from(rng, shape)
        text = serialize_game(g)
        h = parse_game(text)
        assert h == g
        assert np.array_equal(h.utilities.view(np.uint64), g.utilities.view(np.uint64))
        assert serialize_game(h) == text


def test_plain_numbers_are_accepted(pd):
    doc = game_to_dict(pd)
    doc["utilities"] = [float(v) for v in doc["utilities"]]
    assert parse_game(json.dumps(doc)) == pd


@pytest.mark.parametrize("bad", ["inf", "-inf", "nan", "Infinity"])
def test_non_finite_payoffs_rejected(pd, bad):
    doc = game_to_dict(pd)
    doc["utilities"][3] = bad
    with pytest.raises(GameFormatError, match=r"utilities\[3\]"):
        parse_game(json.dumps(doc))


@pytest.mark.parametrize("mutate,field", [
    (lambda d: d.pop("schema"), "schema"),
    (lambda d: d.update(players=0), "players"),
    (lambda d: d.update(players=True), "players"),
    (lambda d: d.update(actions=[["C", "D"]]), "actions"),
    (lambda d: d["actions"].__setitem__(1, ["C", "C"]), r"actions\[1\]"),
    (lambda d: d["actions"][0].__setitem__(0, 3), r"actions\[0\]\[0\]"),
    (lambda d: d["utilities"].pop(), "utilities"),
    (lambda d: d["utilities"].__setitem__(0, "three"), r"utilities\[0\]"),
    (lambda d: d["utilities"].__setitem__(0, None), r"utilities\[0\]"),
])
def test_malformed_documents_name_the_field(pd, mutate, field):
    doc = game_to_dict(pd)
    mutate(doc)
    with pytest.raises(GameFormatError, match=field):
        parse_game(json.dumps(doc))


def test_bad_json_reports_position():
    with pytest.raises(GameFormatError, match="line 2, column"):
        parse_game('{"schema":\n  nope}')
    with pytest.raises(GameFormatError, match="document"):
        parse_game("[1, 2]")


def test_load_game(tmp_path, pd):
    p = tmp_path / "pd.json"
    p.write_text(serialize_game(pd))
    assert load_game(p) == pd


def test_random_game_is_deterministic():
    a = random_game((3, 2, 2), 42)
    assert a == random_game((3, 2, 2), 42)
    assert a != random_game((3, 2, 2), 43)
    assert a.action_names[0] == ("a0", "a1", "a2")


def test_shapes():
    assert parse_shape("2x3x3") == (3, 3)
    assert parse_shape("3X2x2x4") == (2, 2, 4)
    assert format_shape((3, 3)) == "2x3x3"
    for bad in ("2x3", "x", "2x0x3", "ax2", "0"):
        with pytest.raises(GameError):
            parse_shape(bad)
