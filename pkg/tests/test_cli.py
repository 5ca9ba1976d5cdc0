import json
import subprocess
import sys

import pytest

from nonstrat import parse_game, serialize_game
from nonstrat.cli import RunConfig, main


@pytest.fixture
def pd_file(tmp_path, pd):
    p = tmp_path / "pd.json"
    p.write_text(serialize_game(pd))
    return str(p)


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_predict(capsys, pd_file):
    code, doc = run_json(capsys, "predict", "--model", "maxmax", "--game", pd_file)
    assert code == 0
    assert doc["distribution"] == {"C": 0.0, "D": 1.0}


def test_predict_table(capsys, pd_file):
    assert main(["predict", "--model", "welfare", "--game", pd_file, "--player", "1"]) == 0
    out = capsys.readouterr().out
    assert "C\t1.000000" in out and "D\t0.000000" in out


def test_solve_qre(capsys, pd_file):
    code, doc = run_json(capsys, "solve-qre", "--game", pd_file, "--lambda", "2")
    assert code == 0 and doc["converged"] and doc["residual"] <= 1e-10
    assert doc["profile"][0]["D"] == pytest.approx(0.8808, abs=1e-4)


def test_solve_qre_strict_non_convergence(capsys, pd_file):
    assert main(["solve-qre", "--game", pd_file, "--lambda", "2", "--max-iter", "2",
                 "--strict"]) == 2


def test_demo_aggregation(capsys):
    code, doc = run_json(capsys, "demo", "aggregation", "--alpha", "0.5")
    assert code == 0 and doc["matches"]
    assert doc["outputs"] == [{"U": 0.0, "D": 1.0}, {"U": 0.5, "D": 0.5}]
    assert len(doc["games"]) == 2


def test_demo_theorem3(capsys):
    code, doc = run_json(capsys, "demo", "theorem3")
    assert code == 0
    assert doc["outputs"]["maxmax"] == [{"U": 1.0, "D": 0.0}, {"U": 0.0, "D": 1.0}]
    assert doc["outputs"]["welfare"][0] == doc["outputs"]["welfare"][1]


def test_classify_welfare(capsys):
    code, doc = run_json(capsys, "classify", "--model", "welfare", "--budget", "100")
    assert code == 0
    assert doc["verdict"] == "NONSTRATEGIC-WITNESSED"
    assert doc["flags"]["dominance_counterexample"]
    games = [parse_game(json.dumps(g)) for g in doc["witness_games"]]
    assert len(games) >= 2
    assert doc["config"]["seed"] == 0 and doc["config"]["budget"] == 100


def test_classify_strict_inconclusive(capsys):
    argv = ["classify", "--model", "qbr:uniform:1", "--budget", "50"]
    assert main(argv) == 0
    assert main(argv + ["--strict"]) == 2


def test_witness_self(capsys, pd_file):
    code, doc = run_json(capsys, "witness", "self", "--model", "qbr:uniform:1", "--game", pd_file)
    assert code == 0 and doc["verdict"] == "witness-found"
    assert doc["details"]["argmin_action"] == "C"


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("NONSTRAT_SEED", "9")
    _, doc = run_json(capsys, "witness", "dominance", "--model", "maxmax", "--budget", "5")
    assert doc["seed"] == 9


@pytest.mark.parametrize("argv", [
    ["predict", "--model", "nosuch", "--game", "x.json"],
    ["classify"],
    ["gen", "--shape", "2x3"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_bad_model_spec(capsys, pd_file):
    assert main(["predict", "--model", "soft:maxmax", "--game", pd_file]) == 1
    assert "error" in capsys.readouterr().err


def test_gen(capsys):
    assert main(["gen", "--shape", "2x3x3", "--seed", "4", "--description", "demo"]) == 0
    text = capsys.readouterr().out
    g = parse_game(text)
    assert g.shape == (3, 3)
    assert json.loads(text)["metadata"]["description"] == "demo"
    assert main(["gen", "--shape", "2x3x3", "--seed", "4", "--description", "demo"]) == 0
    assert capsys.readouterr().out == text


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(budget=0)
    with pytest.raises(ValueError):
        RunConfig(output="xml")


def test_classify_subprocess_is_deterministic():
    argv = [sys.executable, "-m", "nonstrat", "classify", "--model", "mix:0.5*maxmax+0.5*welfare",
            "--budget", "300", "--seed", "5", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["verdict"] == "NONSTRATEGIC-WITNESSED"
