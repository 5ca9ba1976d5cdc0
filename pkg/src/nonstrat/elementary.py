"""Elementary behavioral models: a potential scores each outcome, then an
aggregator maps the resulting potential map to a behavior.

A potential function takes one payoff tuple ``(u_0(a), ..., u_{n-1}(a))`` to a
real number.  Built-in potentials are vectorized: they reduce the last axis of
an array, so a whole utility tensor is scored at once.  Aggregators only ever
see the potential map and the player index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .game import (EPS_TIE, GameError, NormalFormGame, check_behavior, check_player,
                   uniform, uniform_over)

CollisionGenerator = Callable[[int, int], tuple[np.ndarray, np.ndarray]]
COLLISION_TOL = 1e-12


@dataclass(frozen=True)
class PotentialFunction:
    """A map from payoff tuples to a single real.

    ``dictator`` declares that the output depends on that coordinate alone.
    ``collisions(m, i)`` returns a pair of length-``m`` tuples that differ in
    coordinate ``i`` and have exactly equal potential.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    vectorized: bool = True
    dictator: Optional[int] = None
    collisions: Optional[CollisionGenerator] = field(default=None, compare=False)

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=np.float64)
        return float(np.asarray(self.evaluate(x)))

    def apply(self, payoffs: np.ndarray) -> np.ndarray:
        """Score every payoff tuple in an array whose last axis holds tuples."""
        payoffs = np.asarray(payoffs, dtype=np.float64)
        if self.vectorized:
            out = np.asarray(self.evaluate(payoffs), dtype=np.float64)
        else:
            flat = payoffs.reshape(-1, payoffs.shape[-1])
            out = np.array([float(self.evaluate(x)) for x in flat]).reshape(payoffs.shape[:-1])
        if out.shape != payoffs.shape[:-1]:
            raise GameError(f"potential {self.name!r} returned shape {out.shape}")
        return out

    def check_declarations(self, m: int, samples: int = 100, seed: int = 0) -> None:
        """Spot-check declared metadata on length-``m`` tuples; raise on mismatch."""
        if self.dictator is not None and self.dictator < m:
            probe = dictatorship_probe(self, m, samples, seed)
            if not probe.verdicts[self.dictator]:
                raise GameError(f"{self.name}: declared dictator {self.dictator} refuted")
        if self.collisions is not None and m >= 2:
            for i in range(m):
                x, xp = self.collisions(m, i)
                if x[i] == xp[i] or self(x) != self(xp):
                    raise GameError(f"{self.name}: registered collision for coordinate {i} is invalid")


def projection(player: int) -> PotentialFunction:
    """The dictatorial potential ``u -> u[player]``."""
    return PotentialFunction(f"u{player}", lambda u: u[..., player], dictator=player)


def constant_potential(player: int) -> PotentialFunction:
    # constant is dictatorial in every coordinate, so declaring `player` is safe
    def collide(m, i):
        x = np.zeros(m)
        xp = x.copy()
        xp[i] = 1.0
        return x, xp

    return PotentialFunction("const", lambda u: np.zeros(np.shape(u)[:-1]),
                             dictator=player, collisions=collide)


def _swap_collision(m: int, i: int) -> tuple[np.ndarray, np.ndarray]:
    # integers so that permuted sums stay exact
    x = np.arange(1.0, m + 1.0)
    j = i + 1 if i + 1 < m else i - 1
    xp = x.copy()
    xp[i], xp[j] = x[j], x[i]
    return x, xp


def _spread_collision(m: int, i: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.zeros(m)
    j = i + 1 if i + 1 < m else i - 1
    x[j] = 1.0
    xp = np.zeros(m)
    xp[i] = 1.0
    return x, xp


def welfare_potential() -> PotentialFunction:
    """Sum of all players' payoffs."""
    return PotentialFunction("sum", lambda u: np.sum(u, axis=-1), collisions=_swap_collision)


def spread_potential() -> PotentialFunction:
    """Largest pairwise payoff difference, ``max_j u_j - min_j u_j``."""
    return PotentialFunction("spread", lambda u: np.max(u, axis=-1) - np.min(u, axis=-1),
                             collisions=_spread_collision)


def potential_map(phi: PotentialFunction, game: NormalFormGame) -> np.ndarray:
    """Tensor of ``phi(u(a))`` over all action profiles ``a``."""
    out = phi.apply(game.utilities)
    if not np.all(np.isfinite(out)):
        raise GameError(f"potential {phi.name!r} produced non-finite values")
    out.setflags(write=False)
    return out


def _rows(potentials: np.ndarray, player: int) -> np.ndarray:
    k = potentials.shape[player]
    return np.moveaxis(potentials, player, 0).reshape(k, -1)


# per-action scores: the statistic each hard rule maximizes or minimizes
def best_case(potentials, player):
    return _rows(potentials, player).max(axis=1)


def worst_case(potentials, player):
    return _rows(potentials, player).min(axis=1)


def max_regret(potentials, player):
    rows = _rows(potentials, player)
    return (rows.max(axis=0) - rows).max(axis=1)


def flat_score(potentials, player):
    return np.zeros(potentials.shape[player])


def argbest(scores: np.ndarray, sense: str, tie: float = EPS_TIE) -> np.ndarray:
    """Uniform distribution over actions whose score is within ``tie`` of the best."""
    if sense == "max":
        support = np.flatnonzero(scores >= scores.max() - tie)
    elif sense == "min":
        support = np.flatnonzero(scores <= scores.min() + tie)
    else:
        raise ValueError(f"unknown sense {sense!r}")
    return uniform_over(scores.size, support)


def logit(scores: np.ndarray, precision: float) -> np.ndarray:
    """Softmax of ``precision * scores`` with max-subtraction."""
    z = precision * np.asarray(scores, dtype=np.float64)
    z = z - z.max()
    w = np.exp(z)
    return w / w.sum()


@dataclass(frozen=True)
class ElementaryModel:
    """``f_i(G) = aggregator(potential_map(potential_for(i), G), i)``.

    ``score`` and ``sense`` are set for the score-then-argbest family (every
    built-in rule); they are what :func:`make_soft_variant` needs.
    """

    name: str
    potential_for: Callable[[int], PotentialFunction]
    aggregator: Callable[[np.ndarray, int], np.ndarray]
    score: Optional[Callable[[np.ndarray, int], np.ndarray]] = None
    sense: Optional[str] = None

    def __call__(self, game: NormalFormGame, player: int) -> np.ndarray:
        return evaluate_elementary(self, game, player)


def evaluate_elementary(model: ElementaryModel, game: NormalFormGame, player: int) -> np.ndarray:
    player = check_player(game, player)
    phi_map = potential_map(model.potential_for(player), game)
    return check_behavior(model.aggregator(phi_map, player), game.shape[player])


def _hard(name, potential_for, score, sense) -> ElementaryModel:
    def aggregate(phi_map, player):
        return argbest(score(phi_map, player), sense)

    return ElementaryModel(name, potential_for, aggregate, score, sense)


def _shared(phi: PotentialFunction) -> Callable[[int], PotentialFunction]:
    return lambda player: phi


def make_uniform() -> ElementaryModel:
    return ElementaryModel("uniform", constant_potential,
                           lambda phi_map, player: uniform(phi_map.shape[player]),
                           flat_score, "max")


def make_maxmax() -> ElementaryModel:
    return _hard("maxmax", projection, best_case, "max")


def make_maxmin() -> ElementaryModel:
    return _hard("maxmin", projection, worst_case, "max")


def make_minimax_regret() -> ElementaryModel:
    return _hard("mmr", projection, max_regret, "min")


def make_max_welfare() -> ElementaryModel:
    return _hard("welfare", _shared(welfare_potential()), best_case, "max")


def make_fair() -> ElementaryModel:
    return _hard("fair", _shared(spread_potential()), worst_case, "min")


BUILTINS = {
    "uniform": make_uniform,
    "maxmax": make_maxmax,
    "maxmin": make_maxmin,
    "mmr": make_minimax_regret,
    "welfare": make_max_welfare,
    "fair": make_fair,
}


def make_soft_variant(base: ElementaryModel, precision: float,
                      sense: Optional[str] = None) -> ElementaryModel:
    """Replace the hard argmax/argmin of ``base`` by a logit over the same scores."""
    if base.score is None:
        raise GameError(f"model {base.name!r} has no per-action score to soften")
    if not (np.isfinite(precision) and precision >= 0):
        raise GameError("precision must be finite and nonnegative")
    sense = sense or base.sense
    if sense not in ("max", "min"):
        raise GameError(f"unknown sense {sense!r}")
    sign = 1.0 if sense == "max" else -1.0
    score = base.score

    def aggregate(phi_map, player):
        return logit(sign * score(phi_map, player), precision)

    return ElementaryModel(f"soft:{base.name}:{precision:g}", base.potential_for,
                           aggregate, score, sense)


@dataclass(frozen=True)
class DictatorshipProbe:
    """Per-coordinate result of randomized dictatorship probing.

    ``verdicts[d]`` is True when every sampled pair that fixed coordinate ``d``
    produced identical output (consistent with ``d`` being a dictator),
    False when some pair refuted it.
    """

    verdicts: tuple[bool, ...]
    declared: Optional[int]

    @property
    def agrees_with_declaration(self) -> bool:
        return self.declared is None or self.verdicts[self.declared]

    def labels(self) -> list[str]:
        return ["consistent-with-dictatorial" if v else "refuted" for v in self.verdicts]


def dictatorship_probe(phi: PotentialFunction, m: int, samples: int = 100,
                       seed: int = 0) -> DictatorshipProbe:
    if m < 1:
        raise GameError("tuple length must be at least 1")
    rng = np.random.default_rng(seed)
    verdicts = []
    for d in range(m):
        consistent = True
        for _ in range(samples):
            x = rng.standard_normal(m)
            xp = rng.standard_normal(m)
            xp[d] = x[d]
            if phi(x) != phi(xp):
                consistent = False
                break
        verdicts.append(consistent)
    return DictatorshipProbe(tuple(verdicts), phi.dictator)


def _collides(phi, x, xp, i, tol=COLLISION_TOL) -> bool:
    return x[i] != xp[i] and abs(phi(x) - phi(xp)) <= tol


def collision_witness(phi: PotentialFunction, m: int, coordinate: int, budget: int = 200,
                      seed: int = 0) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """Find ``x, x'`` with ``x[i] != x'[i]`` and equal potential, or None.

    Tries the registered generator, then moving coordinate ``i`` alone, then
    swapping it with another coordinate, then a seeded random search that
    brackets a root of the potential difference along a second coordinate.
    """
    if m < 2:
        raise GameError("collision search needs tuples of length at least 2")
    i = coordinate
    if not 0 <= i < m:
        raise GameError(f"coordinate {i} out of range for length {m}")
    if phi.collisions is not None:
        x, xp = (np.asarray(v, dtype=np.float64) for v in phi.collisions(m, i))
        if _collides(phi, x, xp, i, tol=0.0):
            return x, xp
    base = np.arange(m, dtype=np.float64)
    moved = base.copy()
    moved[i] += 1.0
    if _collides(phi, base, moved, i):
        return base, moved
    for j in reversed(range(m)):
        if j == i:
            continue
        xp = base.copy()
        xp[i], xp[j] = base[j], base[i]
        if _collides(phi, base, xp, i):
            return base, xp
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        x = rng.standard_normal(m)
        xp = rng.standard_normal(m)
        if xp[i] == x[i]:
            continue
        target = phi(x)
        j = int(rng.choice([k for k in range(m) if k != i]))
        found = _bracket_root(lambda t: phi(_with(xp, j, t)) - target, xp[j])
        if found is not None:
            cand = _with(xp, j, found)
            if _collides(phi, x, cand, i):
                return x, cand
    return None


def _with(x, j, t):
    y = np.array(x)
    y[j] = t
    return y


def _bracket_root(g, start, steps=40):
    g0 = g(start)
    if g0 == 0.0:
        return start
    width = 1.0
    for _ in range(steps):
        for end in (start - width, start + width):
            g1 = g(end)
            if np.sign(g1) != np.sign(g0):
                lo, hi = sorted((start, end))
                try:
                    return brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
                except ValueError:
                    return None
        width *= 2.0
    return None
