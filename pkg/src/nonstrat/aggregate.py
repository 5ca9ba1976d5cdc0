"""Finite aggregations of elementary models and joint collision search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .elementary import (COLLISION_TOL, ElementaryModel, PotentialFunction, collision_witness,
                         make_max_welfare, make_maxmax)
from .game import GameError, NormalFormGame, PROB_TOL, check_behavior, check_player


@dataclass(frozen=True)
class AggregatedModel:
    """``g_i(G) = combiner(f^1_i(G), ..., f^K_i(G))``.

    With ``weights`` set the combiner is the convex combination; otherwise
    ``combiner`` is called with the list of component behaviors.
    """

    components: tuple[ElementaryModel, ...]
    weights: Optional[tuple[float, ...]] = None
    combiner: Optional[Callable[[list], np.ndarray]] = None
    name: str = ""

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise GameError("an aggregation needs at least one component")
        object.__setattr__(self, "components", comps)
        if self.weights is not None:
            w = tuple(float(v) for v in self.weights)
            if len(w) != len(comps):
                raise GameError("one weight per component is required")
            if any(v < 0 for v in w) or abs(sum(w) - 1.0) > PROB_TOL:
                raise GameError("convex weights must be nonnegative and sum to 1")
            object.__setattr__(self, "weights", w)
        elif self.combiner is None:
            raise GameError("give either convex weights or a combiner")
        if not self.name:
            if self.weights is not None:
                label = "+".join(f"{w:g}*{c.name}" for w, c in zip(self.weights, comps))
                object.__setattr__(self, "name", f"mix:{label}")
            else:
                object.__setattr__(self, "name", "agg:" + ",".join(c.name for c in comps))

    @property
    def is_convex(self) -> bool:
        return self.weights is not None

    def potentials_for(self, player: int) -> list[PotentialFunction]:
        return [c.potential_for(player) for c in self.components]

    def __call__(self, game: NormalFormGame, player: int) -> np.ndarray:
        return evaluate_aggregation(self, game, player)


def mixture(pairs: Sequence[tuple[float, ElementaryModel]]) -> AggregatedModel:
    return AggregatedModel(tuple(m for _, m in pairs), tuple(w for w, _ in pairs))


def evaluate_aggregation(model: AggregatedModel, game: NormalFormGame, player: int) -> np.ndarray:
    player = check_player(game, player)
    outputs = [c(game, player) for c in model.components]
    if model.weights is not None:
        out = np.zeros(game.shape[player])
        for w, p in zip(model.weights, outputs):
            out = out + w * p
    else:
        out = model.combiner(outputs)
    return check_behavior(out, game.shape[player])


def _joint_collides(phis, x, xp, i, tol=COLLISION_TOL) -> bool:
    if x[i] == xp[i]:
        return False
    return all(abs(phi(x) - phi(xp)) <= tol for phi in phis)


def joint_collision_witness(phis: Sequence[PotentialFunction], m: int, coordinate: int,
                            budget: int = 200, seed: int = 0):
    """Find ``x, x'`` differing in ``coordinate`` on which every potential agrees.

    Candidates in order: each potential's registered pair, moving the
    coordinate alone, swaps and permutations of a structured tuple, then
    random permutations of random tuples.  A single potential falls back to
    :func:`collision_witness` and its root-bracketing search.
    """
    phis = list(phis)
    if not phis:
        raise GameError("need at least one potential")
    if m <= len(phis):
        raise GameError(f"joint collision search needs m > K (m={m}, K={len(phis)})")
    i = coordinate
    if not 0 <= i < m:
        raise GameError(f"coordinate {i} out of range for length {m}")
    for phi in phis:
        if phi.collisions is not None:
            x, xp = (np.asarray(v, dtype=np.float64) for v in phi.collisions(m, i))
            if _joint_collides(phis, x, xp, i, tol=0.0):
                return x, xp
    base = np.arange(m, dtype=np.float64)
    moved = base.copy()
    moved[i] += 1.0
    if _joint_collides(phis, base, moved, i):
        return base, moved
    for j in reversed(range(m)):
        if j != i:
            xp = base.copy()
            xp[i], xp[j] = base[j], base[i]
            if _joint_collides(phis, base, xp, i):
                return base, xp
    if m <= 6:
        for perm in itertools.permutations(range(m)):
            xp = base[list(perm)]
            if _joint_collides(phis, base, xp, i):
                return base, xp
    if len(phis) == 1:
        return collision_witness(phis[0], m, i, budget=budget, seed=seed)
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        x = rng.standard_normal(m)
        xp = x[rng.permutation(m)]
        if _joint_collides(phis, x, xp, i):
            return x, xp
    return None


@dataclass(frozen=True)
class AggregationCounterexample:
    alpha: float
    g3: NormalFormGame
    g4: NormalFormGame
    model: AggregatedModel
    expected_g3: np.ndarray
    expected_g4: np.ndarray


def aggregation_counterexample(alpha: float) -> AggregationCounterexample:
    """The game pair showing ``alpha*maxmax + (1-alpha)*welfare`` is not elementary.

    The two games differ only at (U, L), where the payoff tuples ``(1, 2)`` and
    ``(2, 1)`` have the same welfare, yet the mixture puts probability 0 on U
    in the first game and ``alpha`` in the second.
    """
    if not 0 < alpha < 1:
        raise GameError("alpha must lie strictly between 0 and 1")
    x = np.array([1.0, 2.0])
    xp = np.array([2.0, 1.0])
    delta = (xp[0] - x[0]) / 2
    y = np.array([x[0] + delta / 2, max(x[1], xp[1]) + 2 * delta])
    z = np.array([0.0, 0.0])
    names = (("U", "D"), ("L", "R"))

    def build(ul):
        return NormalFormGame(names, np.array([[ul, z], [z, y]]))

    model = mixture([(alpha, make_maxmax()), (1 - alpha, make_max_welfare())])
    return AggregationCounterexample(alpha, build(x), build(xp), model,
                                     np.array([0.0, 1.0]), np.array([alpha, 1 - alpha]))
