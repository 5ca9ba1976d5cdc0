"""Acceptance criteria, one test (or a few sub-tests) per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
summary section for one PASS/FAIL line per criterion.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

import oracles
from nonstrat import (Classification, NormalFormGame, Verdict, aggregation_counterexample,
                      classify_model, cognitive_hierarchy_prediction,
                      dominance_responsiveness_falsifier, level_k_prediction, make_maxmax,
                      make_max_welfare, make_qbr_model, make_uniform,
                      other_responsiveness_witness, parse_game, parse_model, prisoners_dilemma,
                      qre_solve, quantal_best_response, random_game, serialize_game,
                      self_responsiveness_construction, theorem3_game_pair)
from nonstrat.catalog import pennies_game
from nonstrat.elementary import BUILTINS
from nonstrat.game import uniform_profile
from nonstrat.gameio import make_rng, random_game_from
from nonstrat.strategic import IterativeModel, qre_residual

from test_elementary import collision_substituted_pairs

criterion = pytest.mark.criterion


def _opponent_resampled_pairs(count, seed):
    for k in range(count):
        rng = make_rng(seed, k)
        n = int(rng.integers(2, 4))
        shape = tuple(int(v) for v in rng.integers(2, 6, size=n))
        g = random_game_from(rng, shape)
        u = np.array(g.utilities)
        u[..., 1:] = rng.standard_normal(shape + (n - 1,))
        yield g, NormalFormGame(g.action_names, u)


@criterion(1)
def test_dictatorial_rules_ignore_opponent_payoffs():
    models = [BUILTINS[name]() for name in ("maxmax", "maxmin", "mmr", "uniform")]
    start = time.perf_counter()
    worst = 0.0
    for g, gp in _opponent_resampled_pairs(1000, seed=2024):
        for m in models:
            worst = max(worst, float(np.max(np.abs(m(g, 0) - m(gp, 0)))))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-12
    assert elapsed < 10.0


@criterion(2)
def test_potential_rules_depend_only_on_potential_map():
    models = [BUILTINS["welfare"](), BUILTINS["fair"]()]
    for g, gp in collision_substituted_pairs(1000, seed=2024):
        for m in models:
            for i in range(g.num_players):
                assert np.array_equal(m(g, i), m(gp, i))


@criterion(2)
def test_collision_pair_outputs():
    g1, g2 = theorem3_game_pair([1.0, 2.0], [2.0, 1.0])
    welfare, maxmax = BUILTINS["welfare"](), BUILTINS["maxmax"]()
    assert np.array_equal(welfare(g1, 0), [0.5, 0.5])
    assert np.array_equal(welfare(g2, 0), [0.5, 0.5])
    assert np.array_equal(maxmax(g1, 0), [1.0, 0.0])
    assert np.array_equal(maxmax(g2, 0), [0.0, 1.0])


LEVEL1 = make_qbr_model(make_uniform(), 1.0)


@criterion(3)
def test_level1_other_responsiveness_witness():
    # Expected to fail: QBR to a fixed belief reads only the player's own
    # payoffs, so no such pair exists (see the decisions ledger).
    rep = other_responsiveness_witness(LEVEL1, 0, budget=100)
    assert rep.found


@criterion(3)
def test_level1_dominance_falsifier_finds_nothing():
    rep = dominance_responsiveness_falsifier(LEVEL1, 0, budget=1000)
    assert rep.verdict is Verdict.NO_WITNESS
    assert rep.budget_used == 1000


@criterion(3)
def test_level1_self_construction_promotes_argmin():
    promoted = 0
    for seed in range(100):
        g = random_game((3, 3), 5000 + seed)
        _, rep = self_responsiveness_construction(LEVEL1, 0, g)
        promoted += rep.details["promoted"]
    assert promoted == 100


@criterion(4)
def test_level1_qch_is_strategic():
    # Expected to fail for the same reason as the level-1 witness above.
    model = IterativeModel(make_uniform(), [0.5, 0.5], kind="ch", lambdas=1.0, level=1)
    assert classify_model(model, 0).verdict is Classification.STRATEGIC


@criterion(4)
def test_level2_qch_is_strategic():
    model = IterativeModel(make_uniform(), [0.4, 0.3, 0.3], kind="ch", lambdas=1.0, level=2)
    assert classify_model(model, 0).verdict is Classification.STRATEGIC


@criterion(5)
@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_aggregation_counterexample_outputs(alpha):
    ce = aggregation_counterexample(alpha)
    assert abs(ce.model(ce.g3, 0)[0] - 0.0) <= 1e-12
    assert abs(ce.model(ce.g4, 0)[0] - alpha) <= 1e-12


@criterion(5)
def test_aggregation_is_not_dominance_responsive():
    model = aggregation_counterexample(0.5).model
    rep = dominance_responsiveness_falsifier(model, 0)
    assert rep.found
    g, gp = rep.games
    assert np.array_equal(model(g, 0), model(gp, 0))


@criterion(6)
def test_qbr_properties():
    pd = prisoners_dilemma()
    g = random_game((4, 3), 1)
    assert np.array_equal(quantal_best_response(g, 0, [[0.5, 0.25, 0.25]], 0.0), np.full(4, 0.25))
    rng = np.random.default_rng(6)
    for _ in range(100):
        u = rng.integers(-9, 10, size=(3, 3, 2)).astype(float)
        h = NormalFormGame.from_payoffs(u)
        belief = [rng.permutation([0.5, 0.25, 0.25])]
        shifted = h.with_payoff(0, h.payoff(0) + float(rng.integers(-50, 51)))
        assert np.array_equal(quantal_best_response(h, 0, belief, 1.0),
                              quantal_best_response(shifted, 0, belief, 1.0))
    margin = NormalFormGame.from_payoffs(np.dstack([[[1.0], [0.0]], [[0.0], [0.0]]]))
    assert abs(quantal_best_response(margin, 0, [[1.0]], 10.0)[0] - 0.9999546) <= 1e-7
    p = quantal_best_response(pd, 0, [[0.5, 0.5]], 1.0)
    assert np.max(np.abs(p - [0.26894, 0.73106])) <= 1e-5


@criterion(7)
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_qre_random_games(lam):
    for seed in range(100):
        g = random_game((2, 2), 7000 + seed)
        sol = qre_solve(g, lam, max_iter=100_000)
        assert qre_residual(g, sol.profile, lam) <= 1e-8


@criterion(7)
def test_qre_uniform_fixed_point_of_pennies():
    g = pennies_game()
    assert qre_residual(g, uniform_profile(g), 1.0) <= 1e-14


@criterion(8)
@pytest.mark.parametrize("shape", [(2, 2), (3, 3)])
def test_iterative_models_match_oracle(shape):
    for k in range(100):
        rng = make_rng(8008, k)
        g = random_game(shape, 8000 + k)
        s0 = tuple(rng.dirichlet(np.ones(s)) for s in shape)
        w = rng.dirichlet(np.ones(int(rng.integers(2, 5))))
        for ours, ref in ((level_k_prediction, oracles.level_k),
                          (cognitive_hierarchy_prediction, oracles.cognitive_hierarchy)):
            got = np.concatenate(ours(g, s0, w))
            want = np.concatenate(ref(g, s0, list(w)))
            assert np.max(np.abs(got - want)) <= 1e-12


@criterion(8)
def test_lk_equals_ch_on_levels_zero_and_one():
    for k in range(100):
        rng = make_rng(8009, k)
        g = random_game((3, 3), k)
        s0 = tuple(rng.dirichlet(np.ones(3)) for _ in range(2))
        w = [float(rng.uniform(0.05, 0.95))]
        w.append(1.0 - w[0])
        assert np.array_equal(np.concatenate(level_k_prediction(g, s0, w)),
                              np.concatenate(cognitive_hierarchy_prediction(g, s0, w)))


@criterion(9)
def test_prisoners_dilemma_table():
    pd = prisoners_dilemma()
    expected = {"maxmax": [0, 1], "maxmin": [0, 1], "mmr": [0, 1],
                "welfare": [1, 0], "fair": [0.5, 0.5]}
    for name, want in expected.items():
        assert np.array_equal(BUILTINS[name]()(pd, 0), want), name


@criterion(10)
def test_round_trip_byte_identical():
    for k in range(1000):
        rng = make_rng(10, k)
        n = int(rng.integers(1, 4))
        g = random_game_from(rng, tuple(int(v) for v in rng.integers(1, 5, size=n)))
        text = serialize_game(g)
        h = parse_game(text)
        assert h.utilities.tobytes() == g.utilities.tobytes()
        assert serialize_game(h) == text


@criterion(10)
def test_classify_runs_byte_identical():
    argv = [sys.executable, "-m", "nonstrat", "classify", "--model", "qbr:qbr:uniform:1:1",
            "--seed", "7", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b
    assert json.loads(a)["config"]["seed"] == 7


def test_heavy_maxmax_mixtures_are_dominance_responsive():
    # with alpha > 1/2 the maxmax share alone separates any reversed pair
    for alpha in (0.75, 0.9):
        model = aggregation_counterexample(alpha).model
        rep = dominance_responsiveness_falsifier(model, 0, budget=300)
        assert rep.verdict is Verdict.NO_WITNESS
