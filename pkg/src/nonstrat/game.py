"""Finite normal-form games, behaviors, expected utility and dominance.

A game stores its payoffs as a single array of shape ``(*sizes, n)`` where
``sizes[j]`` is the number of actions of player ``j`` and the last axis holds
the payoff tuple ``(u_0(a), ..., u_{n-1}(a))`` of profile ``a``.  Players and
actions are indexed from 0.

Behaviors are plain 1-D float arrays; a behavior profile is a tuple with one
behavior per player.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

EPS_TIE = 1e-9
EPS_DIFF = 1e-6
EPS_EQUAL = 1e-12
PROB_TOL = 1e-12


class GameError(ValueError):
    """Raised for malformed games or arguments inconsistent with a game."""


@dataclass(frozen=True, eq=False)
class NormalFormGame:
    """An n-player normal-form game with labelled actions.

    ``utilities[a_0, ..., a_{n-1}, j]`` is player ``j``'s payoff at profile
    ``a``.  The array is copied and made read-only on construction.
    """

    action_names: tuple[tuple[str, ...], ...]
    utilities: np.ndarray

    def __post_init__(self):
        names = tuple(tuple(str(a) for a in acts) for acts in self.action_names)
        u = np.array(self.utilities, dtype=np.float64)
        n = len(names)
        if n < 1:
            raise GameError("a game needs at least one player")
        sizes = tuple(len(acts) for acts in names)
        if any(k < 1 for k in sizes):
            raise GameError("every player needs at least one action")
        for j, acts in enumerate(names):
            if len(set(acts)) != len(acts):
                raise GameError(f"player {j} has duplicate action labels {acts}")
        if u.shape != sizes + (n,):
            raise GameError(f"utilities have shape {u.shape}, expected {sizes + (n,)}")
        if not np.all(np.isfinite(u)):
            raise GameError("utilities must be finite")
        u.setflags(write=False)
        object.__setattr__(self, "action_names", names)
        object.__setattr__(self, "utilities", u)

    @classmethod
    def from_payoffs(cls, utilities, action_names=None) -> "NormalFormGame":
        """Build a game from a ``(*sizes, n)`` array, labelling actions ``a0, a1, ...`` by default."""
        u = np.asarray(utilities, dtype=np.float64)
        if action_names is None:
            action_names = [[f"a{k}" for k in range(size)] for size in u.shape[:-1]]
        return cls(tuple(tuple(a) for a in action_names), u)

    @property
    def num_players(self) -> int:
        return len(self.action_names)

    @property
    def shape(self) -> tuple[int, ...]:
        """Number of actions per player."""
        return self.utilities.shape[:-1]

    def payoff(self, player: int) -> np.ndarray:
        """Player's utility tensor of shape ``self.shape``."""
        return self.utilities[..., player]

    def with_payoff(self, player: int, values) -> "NormalFormGame":
        """Copy of the game with one player's utility tensor replaced."""
        u = np.array(self.utilities)
        u[..., player] = values
        return NormalFormGame(self.action_names, u)

    def same_form(self, other: "NormalFormGame") -> bool:
        """True if both games have the same players, shape and action labels."""
        return self.action_names == other.action_names

    def __eq__(self, other):
        if not isinstance(other, NormalFormGame):
            return NotImplemented
        return self.same_form(other) and np.array_equal(self.utilities, other.utilities)

    def __hash__(self):
        return hash((self.action_names, self.utilities.tobytes()))

    def __repr__(self):
        return f"NormalFormGame(shape={self.shape}, actions={self.action_names})"


def check_player(game: NormalFormGame, player: int) -> int:
    if not 0 <= player < game.num_players:
        raise GameError(f"player {player} out of range for a {game.num_players}-player game")
    return int(player)


def check_behavior(probs, size: Optional[int] = None) -> np.ndarray:
    """Validate a distribution over actions and return it as a float array."""
    p = np.asarray(probs, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise GameError("a behavior must be a non-empty 1-D vector")
    if size is not None and p.size != size:
        raise GameError(f"behavior has {p.size} entries, expected {size}")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise GameError("behavior entries must be finite and nonnegative")
    if abs(p.sum() - 1.0) > PROB_TOL:
        raise GameError(f"behavior sums to {p.sum()!r}, not 1")
    return p


def check_profile(game: NormalFormGame, profile: Sequence) -> tuple[np.ndarray, ...]:
    if len(profile) != game.num_players:
        raise GameError(f"profile has {len(profile)} behaviors for {game.num_players} players")
    return tuple(check_behavior(s, k) for s, k in zip(profile, game.shape))


def check_joint(game: NormalFormGame, sigma) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.shape != game.shape:
        raise GameError(f"joint distribution has shape {sigma.shape}, expected {game.shape}")
    if not np.all(np.isfinite(sigma)) or np.any(sigma < 0):
        raise GameError("joint distribution entries must be finite and nonnegative")
    if abs(sigma.sum() - 1.0) > PROB_TOL:
        raise GameError("joint distribution must sum to 1")
    return sigma


def uniform(size: int) -> np.ndarray:
    return np.full(size, 1.0 / size)


def uniform_profile(game: NormalFormGame) -> tuple[np.ndarray, ...]:
    return tuple(uniform(k) for k in game.shape)


def pure(size: int, action: int) -> np.ndarray:
    p = np.zeros(size)
    p[action] = 1.0
    return p


def uniform_over(size: int, support) -> np.ndarray:
    """Uniform distribution over the action indices in ``support``."""
    support = np.asarray(sorted(support), dtype=int)
    p = np.zeros(size)
    p[support] = 1.0 / support.size
    return p


def product_distribution(profile: Sequence) -> np.ndarray:
    """Joint distribution over profiles induced by independent behaviors."""
    sigma = np.ones(())
    for s in profile:
        sigma = np.multiply.outer(sigma, np.asarray(s, dtype=np.float64))
    return sigma


def _opponents(game: NormalFormGame, player: int, s_minus_i: Sequence) -> list[np.ndarray]:
    # accepts either the n-1 opponent behaviors in player order or a full
    # profile whose entry for `player` is ignored
    n = game.num_players
    if len(s_minus_i) == n:
        others = [s for j, s in enumerate(s_minus_i) if j != player]
    elif len(s_minus_i) == n - 1:
        others = list(s_minus_i)
    else:
        raise GameError(f"expected {n - 1} opponent behaviors, got {len(s_minus_i)}")
    sizes = [k for j, k in enumerate(game.shape) if j != player]
    return [check_behavior(s, k) for s, k in zip(others, sizes)]


def action_values(game: NormalFormGame, player: int, s_minus_i: Sequence) -> np.ndarray:
    """Expected utility of each of ``player``'s actions against ``s_minus_i``.

    ``s_minus_i`` is either the opponents' behaviors in player order or a
    full profile (the player's own entry is ignored).
    """
    player = check_player(game, player)
    others = _opponents(game, player, s_minus_i)
    t = np.moveaxis(game.payoff(player), player, 0)
    for s in reversed(others):
        t = t @ s
    return np.asarray(t, dtype=np.float64)


def expected_utility(game: NormalFormGame, player: int, profile: Sequence) -> float:
    """Expected utility of ``player`` under the behavior profile."""
    profile = check_profile(game, profile)
    return float(profile[player] @ action_values(game, player, profile))


def best_response_set(game: NormalFormGame, player: int, s_minus_i: Sequence,
                      tie: float = EPS_TIE) -> frozenset[int]:
    """Actions whose expected utility is within ``tie`` of the best."""
    values = action_values(game, player, s_minus_i)
    return frozenset(np.flatnonzero(values >= values.max() - tie).tolist())


def _own_rows(game: NormalFormGame, player: int) -> np.ndarray:
    # (own action, flattened opposing profile)
    k = game.shape[player]
    return np.moveaxis(game.payoff(player), player, 0).reshape(k, -1)


def strictly_dominates(game: NormalFormGame, player: int, a: int, a_prime: int) -> bool:
    """True iff ``a`` beats ``a_prime`` against every opposing pure profile."""
    player = check_player(game, player)
    if a == a_prime:
        raise GameError("strict dominance compares two distinct actions")
    rows = _own_rows(game, player)
    return bool(np.all(rows[a] > rows[a_prime]))


def strictly_dominant_action(game: NormalFormGame, player: int) -> Optional[int]:
    """The action strictly dominating all others, or None."""
    player = check_player(game, player)
    k = game.shape[player]
    if k < 2:
        raise GameError("dominance needs at least two actions")
    rows = _own_rows(game, player)
    # a dominant action must be the argmax in every column
    candidate = int(np.argmax(rows[:, 0]))
    others = np.delete(rows, candidate, axis=0)
    if np.all(rows[candidate] > others):
        return candidate
    return None


def is_dominance_reversed_pair(game: NormalFormGame, game_prime: NormalFormGame,
                               player: int) -> Optional[tuple[int, int]]:
    """``(a, a')`` with ``a`` strictly dominant in ``game`` and ``a'`` strictly
    dominating ``a`` in ``game_prime``; None if the pair is not reversed."""
    if not game.same_form(game_prime):
        raise GameError("dominance reversal compares games of the same form")
    a = strictly_dominant_action(game, player)
    if a is None:
        return None
    for b in range(game.shape[player]):
        if b != a and strictly_dominates(game_prime, player, b, a):
            return a, b
    return None


def verify_nash(game: NormalFormGame, profile: Sequence, tol: float = 1e-9) -> bool:
    """Every action played with probability above ``tol`` is a best response."""
    profile = check_profile(game, profile)
    for i, s in enumerate(profile):
        br = best_response_set(game, i, profile)
        if any(a not in br for a in np.flatnonzero(s > tol)):
            return False
    return True


def verify_correlated_equilibrium(game: NormalFormGame, sigma, tol: float = 1e-9) -> bool:
    """Check the obedience constraint for every player and recommended action."""
    sigma = check_joint(game, sigma)
    for i in range(game.num_players):
        weights = _own_rows_of(sigma, i)
        rows = _own_rows(game, i)
        # gains[a, b]: payoff mass from obeying a minus deviating to b
        obey = np.sum(weights * rows, axis=1)
        deviate = weights @ rows.T
        if np.any(obey[:, None] < deviate - tol):
            return False
    return True


def _own_rows_of(tensor: np.ndarray, player: int) -> np.ndarray:
    k = tensor.shape[player]
    return np.moveaxis(tensor, player, 0).reshape(k, -1)


class Comparison(enum.Enum):
    EQUAL = "equal"
    DIFFERENT = "different"
    INCONCLUSIVE = "inconclusive"


def compare_behaviors(p, q, diff: float = EPS_DIFF, equal: float = EPS_EQUAL) -> Comparison:
    """Three-way comparison of two behaviors over the same labelled actions."""
    d = float(np.max(np.abs(np.asarray(p, dtype=np.float64) - np.asarray(q, dtype=np.float64))))
    if d > diff:
        return Comparison.DIFFERENT
    if d <= equal:
        return Comparison.EQUAL
    return Comparison.INCONCLUSIVE


def model_name(model) -> str:
    return getattr(model, "name", None) or repr(model)


def model_profile(model, game: NormalFormGame) -> tuple[np.ndarray, ...]:
    """Apply a behavioral model to every player of the game."""
    return tuple(np.asarray(model(game, j), dtype=np.float64) for j in range(game.num_players))
