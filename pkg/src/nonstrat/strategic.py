"""Strategic behavioral models: quantal best response, level-k, cognitive
hierarchy (hard and quantal) and a damped fixed-point QRE solver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .elementary import logit
from .game import (GameError, NormalFormGame, PROB_TOL, action_values, best_response_set,
                   check_player, check_profile, model_name, model_profile, uniform_over,
                   uniform_profile)


def quantal_best_response(game: NormalFormGame, player: int, s_minus_i: Sequence,
                          lam: float) -> np.ndarray:
    """Logit response with precision ``lam`` to the opponents' behaviors."""
    if not (np.isfinite(lam) and lam >= 0):
        raise GameError("precision must be finite and nonnegative")
    return logit(action_values(game, player, s_minus_i), lam)


def best_response(game: NormalFormGame, player: int, s_minus_i: Sequence) -> np.ndarray:
    """Uniform randomization over the best-response set."""
    br = best_response_set(game, player, s_minus_i)
    return uniform_over(game.shape[player], br)


def level_distribution(weights) -> np.ndarray:
    """Validate a distribution over levels ``0..K``."""
    d = np.asarray(weights, dtype=np.float64)
    if d.ndim != 1 or d.size == 0:
        raise GameError("level distribution must be a non-empty vector")
    if not np.all(np.isfinite(d)) or np.any(d < 0) or abs(d.sum() - 1.0) > PROB_TOL:
        raise GameError("level distribution must be nonnegative and sum to 1")
    return d


def _precisions(lambdas, levels: int) -> list[Optional[float]]:
    if lambdas is None:
        return [None] * levels
    lam = np.atleast_1d(np.asarray(lambdas, dtype=np.float64))
    if lam.size == 1:
        lam = np.repeat(lam, levels)
    if lam.size != levels:
        raise GameError(f"need one precision per level 1..{levels}, got {lam.size}")
    return [float(v) for v in lam]


def _respond(game, belief, lam):
    if lam is None:
        return tuple(best_response(game, i, belief) for i in range(game.num_players))
    return tuple(quantal_best_response(game, i, belief, lam) for i in range(game.num_players))


def _mix(weights, profiles):
    w = np.asarray(weights, dtype=np.float64)
    n = len(profiles[0])
    return tuple(sum(wk * p[i] for wk, p in zip(w, profiles)) for i in range(n))


def level_k_behaviors(game, s0, levels: int, lambdas=None) -> list[tuple[np.ndarray, ...]]:
    """Profiles ``s^0..s^levels``; level k responds to level k-1."""
    out = [check_profile(game, s0)]
    for lam in _precisions(lambdas, levels):
        out.append(_respond(game, out[-1], lam))
    return out


def cognitive_hierarchy_behaviors(game, s0, weights, lambdas=None) -> list[tuple[np.ndarray, ...]]:
    """Profiles ``pi^0..pi^K``; level k responds to the renormalized mixture of
    levels below it."""
    d = level_distribution(weights)
    levels = d.size - 1
    if levels >= 1 and d[0] == 0:
        raise GameError("cognitive hierarchy needs positive weight on level 0")
    out = [check_profile(game, s0)]
    for k, lam in enumerate(_precisions(lambdas, levels), start=1):
        out.append(_respond(game, ch_belief(d, out, k), lam))
    return out


def ch_belief(weights, behaviors, k):
    """Mixture of levels ``0..k-1`` weighted by ``weights`` renormalized."""
    w = np.asarray(weights[:k], dtype=np.float64)
    return _mix(w / w.sum(), behaviors[:k])


def level_k_prediction(game, s0, weights):
    d = level_distribution(weights)
    return _mix(d, level_k_behaviors(game, s0, d.size - 1))


def cognitive_hierarchy_prediction(game, s0, weights):
    d = level_distribution(weights)
    return _mix(d, cognitive_hierarchy_behaviors(game, s0, d))


def quantal_level_k_prediction(game, s0, weights, lambdas):
    d = level_distribution(weights)
    return _mix(d, level_k_behaviors(game, s0, d.size - 1, lambdas))


def quantal_cognitive_hierarchy_prediction(game, s0, weights, lambdas):
    d = level_distribution(weights)
    return _mix(d, cognitive_hierarchy_behaviors(game, s0, d, lambdas))


@dataclass(frozen=True)
class QreSolution:
    profile: tuple[np.ndarray, ...]
    residual: float
    iterations: int
    converged: bool


def qbr_profile(game, profile, lam):
    return tuple(quantal_best_response(game, i, profile, lam) for i in range(game.num_players))


def qre_residual(game, profile, lam) -> float:
    """Max-norm distance between a profile and its quantal best response."""
    q = qbr_profile(game, profile, lam)
    return max(float(np.max(np.abs(s - t))) for s, t in zip(profile, q))


def qre_solve(game: NormalFormGame, lam: float, init=None, damping: float = 0.5,
              tol: float = 1e-10, max_iter: int = 100_000, patience: int = 500) -> QreSolution:
    """Damped fixed-point iteration ``s <- (1-g) s + g QBR(s)``.

    If the best residual has not halved within ``patience`` iterations the
    damping is halved, which tames the oscillation of the plain map on
    matching-pennies-like games.  Returns the best iterate seen.
    """
    if not (np.isfinite(lam) and lam >= 0):
        raise GameError("precision must be finite and nonnegative")
    if not 0 < damping <= 1:
        raise GameError("damping must lie in (0, 1]")
    s = check_profile(game, init) if init is not None else uniform_profile(game)
    best, best_res = s, np.inf
    checkpoint, since = np.inf, 0
    for it in range(1, max_iter + 1):
        q = qbr_profile(game, s, lam)
        res = max(float(np.max(np.abs(a - b))) for a, b in zip(s, q))
        if res < best_res:
            best, best_res = s, res
        if res <= tol:
            return QreSolution(s, res, it, True)
        since += 1
        if best_res <= 0.5 * checkpoint:
            checkpoint, since = best_res, 0
        elif since >= patience:
            damping *= 0.5
            checkpoint, since = best_res, 0
        s = tuple((1 - damping) * a + damping * b for a, b in zip(s, q))
        s = tuple(a / a.sum() for a in s)
    return QreSolution(best, best_res, max_iter, best_res <= tol)


class QuantalResponseModel:
    """Quantal best response of a player to what ``belief`` predicts for each
    opponent.  ``lam=None`` means exact best response with uniform ties."""

    def __init__(self, belief, lam: Optional[float]):
        if lam is not None and not (np.isfinite(lam) and lam >= 0):
            raise GameError("precision must be finite and nonnegative")
        self.belief = belief
        self.lam = lam
        if lam is None:
            self.name = f"br:{model_name(belief)}"
        else:
            self.name = f"qbr:{model_name(belief)}:{lam:g}"

    def __call__(self, game: NormalFormGame, player: int) -> np.ndarray:
        player = check_player(game, player)
        others = [self.belief(game, j) for j in range(game.num_players) if j != player]
        if self.lam is None:
            return best_response(game, player, others)
        return quantal_best_response(game, player, others, self.lam)


def make_qbr_model(base, lam: float) -> QuantalResponseModel:
    """Level-1 style model: QBR to the behavior ``base`` predicts for opponents."""
    return QuantalResponseModel(base, lam)


class IterativeModel:
    """Level-k or cognitive-hierarchy model with a behavioral-model level 0.

    With ``level=None`` the output is the population prediction (mixture over
    levels); with ``level=k`` it is the behavior of a level-k agent.  With
    ``lambdas=None`` responses are exact best responses.
    """

    def __init__(self, base, weights, kind: str = "lk", lambdas=None,
                 level: Optional[int] = None):
        if kind not in ("lk", "ch"):
            raise GameError(f"unknown iterative model kind {kind!r}")
        self.base = base
        self.weights = level_distribution(weights)
        self.kind = kind
        self.lambdas = lambdas
        self.level = level
        levels = self.weights.size - 1
        _precisions(lambdas, levels)
        if level is not None and not 0 <= level <= levels:
            raise GameError(f"level {level} outside 0..{levels}")
        if kind == "ch" and levels >= 1 and self.weights[0] == 0:
            raise GameError("cognitive hierarchy needs positive weight on level 0")
        prefix = ("q" if lambdas is not None else "") + kind
        self.name = f"{prefix}:{model_name(base)}:{','.join(f'{w:g}' for w in self.weights)}"
        if lambdas is not None:
            self.name += ":" + ",".join(f"{v:g}" for v in np.atleast_1d(lambdas))
        if level is not None:
            self.name += f"@{level}"

    def behaviors(self, game: NormalFormGame):
        s0 = model_profile(self.base, game)
        if self.kind == "lk":
            return level_k_behaviors(game, s0, self.weights.size - 1, self.lambdas)
        return cognitive_hierarchy_behaviors(game, s0, self.weights, self.lambdas)

    def __call__(self, game: NormalFormGame, player: int) -> np.ndarray:
        player = check_player(game, player)
        profiles = self.behaviors(game)
        if self.level is not None:
            return profiles[self.level][player]
        return _mix(self.weights, profiles)[player]


class QreModel:
    """Player's part of the QRE reached from the uniform profile."""

    def __init__(self, lam: float, **solver):
        self.lam = lam
        self.solver = solver
        self.name = f"qre:{lam:g}"

    def __call__(self, game: NormalFormGame, player: int) -> np.ndarray:
        player = check_player(game, player)
        return qre_solve(game, self.lam, **self.solver).profile[player]
