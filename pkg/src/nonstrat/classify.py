"""Witness search separating strategic from nonstrategic behavioral models.

A behavioral model here is any callable ``model(game, player) -> behavior``.
The probes below can only ever *exhibit* game pairs; the definitions they
test quantify over all games, so an absent witness is evidence, not proof.

Seeds: random pair ``k`` of a probe is drawn from
``make_rng(seed, probe_tag, k)``, so a report is a function of
``(model, player, shapes, budget, seed)`` alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .aggregate import AggregatedModel, joint_collision_witness
from .catalog import pennies_game, reorient
from .elementary import ElementaryModel, collision_witness
from .game import (Comparison, GameError, NormalFormGame, check_player, compare_behaviors,
                   is_dominance_reversed_pair, model_name, strictly_dominant_action,
                   strictly_dominates)
from .gameio import game_to_dict, make_rng, random_game_from

DEFAULT_SHAPES = ((2, 2), (3, 3), (4, 4))
DEFAULT_BUDGET = 1000
DOMINANCE_MARGIN = 1.0
OPPONENT_LOG_SCALE = float(np.log(10.0))

_OTHER_TAG = 1
_DOMINANCE_TAG = 2


class Verdict(enum.Enum):
    WITNESS_FOUND = "witness-found"
    REFUTED = "refuted"
    NO_WITNESS = "no-witness-within-budget"


class Classification(enum.Enum):
    STRATEGIC = "STRATEGIC-WITNESSED"
    NONSTRATEGIC = "NONSTRATEGIC-WITNESSED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of one probe.

    For ``probe="other"`` and ``"self"`` a witness is a pair whose outputs
    differ by more than ``EPS_DIFF``; for ``probe="dominance"`` it is a
    dominance-reversed pair whose outputs are equal (within ``EPS_EQUAL``),
    i.e. a counterexample to dominance responsiveness.
    """

    probe: str
    verdict: Verdict
    player: int
    seed: int
    budget_used: int
    games: Optional[tuple[NormalFormGame, NormalFormGame]] = None
    outputs: Optional[tuple[np.ndarray, np.ndarray]] = None
    method: Optional[str] = None
    details: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.WITNESS_FOUND

    def to_dict(self) -> dict:
        doc = {
            "probe": self.probe,
            "verdict": self.verdict.value,
            "player": self.player,
            "seed": self.seed,
            "budget_used": self.budget_used,
            "method": self.method,
            "witness_games": [game_to_dict(g) for g in self.games] if self.games else [],
            "outputs": [[float(v) for v in p] for p in self.outputs] if self.outputs else [],
        }
        if self.details:
            doc["details"] = self.details
        return doc


def _shapes_for(shapes, player, min_players=1, min_actions=1):
    ok = [tuple(s) for s in shapes
          if len(s) > player and len(s) >= min_players and s[player] >= min_actions]
    if not ok:
        raise GameError(f"no shape in {list(shapes)} is usable for player {player}")
    return ok


def _outputs(model, g, gp, player):
    return (np.asarray(model(g, player), dtype=np.float64),
            np.asarray(model(gp, player), dtype=np.float64))


def _dictatorial_for(model, player) -> bool:
    if isinstance(model, ElementaryModel):
        return model.potential_for(player).dictator == player
    if isinstance(model, AggregatedModel):
        return all(phi.dictator == player for phi in model.potentials_for(player))
    return False


def _other_targeted(model, player):
    """Pairs from the other-responsiveness argument for quantal responders:
    the pennies game against copies that change only the opponent's payoffs."""
    g = reorient(pennies_game(), player)
    j = 1 - player
    cands = []
    if hasattr(model, "belief"):
        gp, _ = self_responsiveness_construction(model.belief, j, g)
        cands.append(gp)
    for a in range(g.shape[j]):
        rows = np.zeros(g.shape)
        idx = [slice(None)] * g.num_players
        idx[j] = a
        rows[tuple(idx)] = 1.0
        cands.append(g.with_payoff(j, rows))
    return g, cands


def other_responsiveness_witness(model, player: int = 0, shapes=DEFAULT_SHAPES,
                                 budget: int = DEFAULT_BUDGET, seed: int = 0) -> WitnessReport:
    """Look for games equal in ``player``'s payoffs on which ``model`` differs.

    Targeted pairs built on the pennies game come first (2-player shapes
    only), then random pairs that resample every opponent's payoffs.  If
    nothing is found and the model is elementary with a potential dictated by
    ``player``, the verdict is ``refuted``: such a model provably ignores the
    opponents' payoffs.
    """
    shapes = _shapes_for(shapes, player, min_players=2)
    used = 0
    if player < 2 and any(len(s) == 2 for s in shapes):
        g, cands = _other_targeted(model, player)
        for gp in cands:
            if used >= budget:
                break
            used += 1
            out = _outputs(model, g, gp, player)
            if compare_behaviors(*out) is Comparison.DIFFERENT:
                return WitnessReport("other", Verdict.WITNESS_FOUND, player, seed, used,
                                     (g, gp), out, "targeted")
    for k in range(budget - used):
        used += 1
        rng = make_rng(seed, _OTHER_TAG, k)
        shape = shapes[k % len(shapes)]
        g = random_game_from(rng, shape)
        u = np.array(g.utilities)
        others = [j for j in range(len(shape)) if j != player]
        u[..., others] = rng.standard_normal(shape + (len(others),))
        gp = NormalFormGame(g.action_names, u)
        out = _outputs(model, g, gp, player)
        if compare_behaviors(*out) is Comparison.DIFFERENT:
            return WitnessReport("other", Verdict.WITNESS_FOUND, player, seed, used,
                                 (g, gp), out, "random")
    verdict = Verdict.REFUTED if _dictatorial_for(model, player) else Verdict.NO_WITNESS
    return WitnessReport("other", verdict, player, seed, used)


def _rescale_others(game, player, rng):
    # opponents' payoffs at a log-uniform scale in [0.1, 10], so the search
    # also covers games where they dominate welfare-like potentials
    u = np.array(game.utilities)
    others = [j for j in range(game.num_players) if j != player]
    u[..., others] *= np.exp(rng.uniform(-OPPONENT_LOG_SCALE, OPPONENT_LOG_SCALE))
    return NormalFormGame(game.action_names, u)


def reversed_pair_from(rng: np.random.Generator, shape: Sequence[int], player: int,
                       margin: float = DOMINANCE_MARGIN):
    """Draw ``(G, G', a, a')`` with ``a`` strictly dominant in ``G`` and ``a'``
    strictly dominating ``a`` in ``G'``."""
    shape = tuple(shape)
    if shape[player] < 2:
        raise GameError("dominance reversal needs at least two actions")
    g = _rescale_others(random_game_from(rng, shape), player, rng)
    gp = _rescale_others(random_game_from(rng, shape), player, rng)
    a = int(rng.integers(shape[player]))
    a_prime = int(rng.choice([b for b in range(shape[player]) if b != a]))

    u = np.moveaxis(np.array(g.payoff(player)), player, 0)
    rest = np.delete(u, a, axis=0).max(axis=0)
    u[a] = rest + margin + rng.exponential(size=rest.shape)
    g = g.with_payoff(player, np.moveaxis(u, 0, player))

    up = np.moveaxis(np.array(gp.payoff(player)), player, 0)
    up[a_prime] = up[a] + margin + rng.exponential(size=up[a].shape)
    gp = gp.with_payoff(player, np.moveaxis(up, 0, player))

    # verification of the construction
    if strictly_dominant_action(g, player) != a or not strictly_dominates(gp, player, a_prime, a):
        raise AssertionError("dominance-reversed construction failed verification")
    return g, gp, a, a_prime


def generate_dominance_reversed_pair(shape: Sequence[int], player: int, seed: int):
    """Seeded dominance-reversed pair ``(G, G')`` for ``player``."""
    g, gp, _, _ = reversed_pair_from(make_rng(seed), shape, player)
    return g, gp


def theorem3_game_pair(x, x_prime, player: int = 0):
    """Games from a collision pair: ``player`` chooses U or D, every opponent
    has two actions, and each cell carries the payoff tuple of the row.

    In ``G1`` the U cells carry the tuple with the larger ``player``
    coordinate and the D cells the other; ``G2`` swaps them.  U is strictly
    dominant in ``G1`` and strictly dominated in ``G2``.  There are
    ``len(x)`` players.
    """
    x = np.asarray(x, dtype=np.float64)
    xp = np.asarray(x_prime, dtype=np.float64)
    m = x.size
    if xp.shape != x.shape or m < 2:
        raise GameError("collision tuples must have equal length of at least 2")
    if not 0 <= player < m:
        raise GameError(f"player {player} out of range for {m}-tuples")
    if x[player] == xp[player]:
        raise GameError("collision tuples must differ in the player's coordinate")
    if xp[player] < x[player]:
        x, xp = xp, x
    names = tuple(("U", "D") if j == player else ("L", "R") for j in range(m))

    def build(top, bottom):
        u = np.empty((2,) * m + (m,))
        u_front = np.moveaxis(u, player, 0)
        u_front[0] = top
        u_front[1] = bottom
        return NormalFormGame(names, u)

    g1, g2 = build(xp, x), build(x, xp)
    if is_dominance_reversed_pair(g1, g2, player) != (0, 1):
        raise AssertionError("collision pair did not produce a dominance reversal")
    return g1, g2


def _collision_pair(model, player):
    if isinstance(model, ElementaryModel):
        phis = [model.potential_for(player)]
    elif isinstance(model, AggregatedModel) and model.is_convex:
        phis = model.potentials_for(player)
    else:
        return None
    m = max(2, len(phis) + 1, player + 1)
    if len(phis) == 1:
        return collision_witness(phis[0], m, player)
    return joint_collision_witness(phis, m, player)


def dominance_responsiveness_falsifier(model, player: int = 0, shapes=DEFAULT_SHAPES,
                                       budget: int = DEFAULT_BUDGET,
                                       seed: int = 0) -> WitnessReport:
    """Look for a dominance-reversed pair on which ``model``'s outputs are equal.

    Elementary models and convex aggregations are first tried on the pair
    built from a (joint) collision of their potentials; then random
    dominance-reversed pairs are drawn.
    """
    shapes = _shapes_for(shapes, player, min_actions=2)
    used = 0
    pair = _collision_pair(model, player)
    if pair is not None and budget > 0:
        used += 1
        g1, g2 = theorem3_game_pair(*pair, player)
        out = _outputs(model, g1, g2, player)
        if compare_behaviors(*out) is Comparison.EQUAL:
            return WitnessReport("dominance", Verdict.WITNESS_FOUND, player, seed, used,
                                 (g1, g2), out, "collision",
                                 {"x": [float(v) for v in pair[0]],
                                  "x_prime": [float(v) for v in pair[1]]})
    for k in range(budget - used):
        used += 1
        rng = make_rng(seed, _DOMINANCE_TAG, k)
        g, gp, a, b = reversed_pair_from(rng, shapes[k % len(shapes)], player)
        out = _outputs(model, g, gp, player)
        if compare_behaviors(*out) is Comparison.EQUAL:
            return WitnessReport("dominance", Verdict.WITNESS_FOUND, player, seed, used,
                                 (g, gp), out, "random", {"dominant": a, "dominating": b})
    return WitnessReport("dominance", Verdict.NO_WITNESS, player, seed, used)


def self_responsiveness_construction(model, player: int, game: NormalFormGame):
    """Make the model's least likely action strictly dominant and see if it moves.

    ``a-`` is the lowest-index action of minimal probability under ``model``;
    ``G'`` pays ``player`` 1 whenever it plays ``a-`` and 0 otherwise, all
    other payoffs unchanged.  The report's ``details["promoted"]`` says
    whether ``a-`` receives strictly the greatest probability in ``G'``.
    """
    player = check_player(game, player)
    before = np.asarray(model(game, player), dtype=np.float64)
    low = int(np.argmin(before))
    rows = np.zeros(game.shape)
    idx = [slice(None)] * game.num_players
    idx[player] = low
    rows[tuple(idx)] = 1.0
    gp = game.with_payoff(player, rows)
    after = np.asarray(model(gp, player), dtype=np.float64)
    others = np.delete(after, low)
    promoted = bool(others.size == 0 or after[low] > others.max())
    differs = compare_behaviors(before, after) is Comparison.DIFFERENT
    report = WitnessReport("self", Verdict.WITNESS_FOUND if differs else Verdict.REFUTED,
                           player, 0, 1, (game, gp), (before, after), "construction",
                           {"argmin_action": game.action_names[player][low],
                            "promoted": promoted})
    return gp, report


@dataclass(frozen=True)
class ClassificationReport:
    model: str
    player: int
    verdict: Classification
    other: WitnessReport
    dominance: WitnessReport
    shapes: tuple[tuple[int, ...], ...]
    budget: int
    seed: int

    @property
    def other_responsive(self) -> bool:
        return self.other.found

    @property
    def dominance_counterexample(self) -> bool:
        return self.dominance.found

    def to_dict(self) -> dict:
        witness_games, outputs = [], []
        for rep in (self.other, self.dominance):
            if rep.found:
                witness_games.extend(game_to_dict(g) for g in rep.games)
                outputs.extend([float(v) for v in p] for p in rep.outputs)
        return {
            "model": self.model,
            "player": self.player,
            "verdict": self.verdict.value,
            "budget": self.budget,
            "seed": self.seed,
            "shapes": [list(s) for s in self.shapes],
            "flags": {
                "other_responsive_witness": self.other.found,
                "dominance_counterexample": self.dominance.found,
                "dictatorial_refutation": self.other.verdict is Verdict.REFUTED,
            },
            "probes": {"other": self.other.to_dict(), "dominance": self.dominance.to_dict()},
            "witness_games": witness_games,
            "outputs": outputs,
        }


def classify_model(model, player: int = 0, shapes=DEFAULT_SHAPES, budget: int = DEFAULT_BUDGET,
                   seed: int = 0) -> ClassificationReport:
    """Run both probes and combine them.

    STRATEGIC-WITNESSED: an other-responsiveness witness and no dominance
    counterexample.  NONSTRATEGIC-WITNESSED: a dominance counterexample, or a
    dictatorial elementary structure with no other-responsiveness witness.
    INCONCLUSIVE otherwise.
    """
    shapes = tuple(tuple(s) for s in shapes)
    other = other_responsiveness_witness(model, player, shapes, budget, seed)
    dom = dominance_responsiveness_falsifier(model, player, shapes, budget, seed)
    if dom.found or other.verdict is Verdict.REFUTED:
        verdict = Classification.NONSTRATEGIC
    elif other.found:
        verdict = Classification.STRATEGIC
    else:
        verdict = Classification.INCONCLUSIVE
    return ClassificationReport(model_name(model), player, verdict, other, dom, shapes,
                                budget, seed)
