"""Small named games used in examples, demos and tests."""

import numpy as np

from .game import NormalFormGame


def prisoners_dilemma() -> NormalFormGame:
    u = np.array([[[3, 3], [0, 4]],
                  [[4, 0], [1, 1]]], dtype=float)
    return NormalFormGame((("C", "D"), ("C", "D")), u)


def pennies_game() -> NormalFormGame:
    """Row wins 1 when actions match (U/L, D/R); column gets 2 on a mismatch, 1 otherwise."""
    u = np.array([[[1, 1], [0, 2]],
                  [[0, 2], [1, 1]]], dtype=float)
    return NormalFormGame((("U", "D"), ("L", "R")), u)


def negate_payoff(game: NormalFormGame, player: int) -> NormalFormGame:
    return game.with_payoff(player, -game.payoff(player))


def reorient(game: NormalFormGame, player: int) -> NormalFormGame:
    """Swap the two players of a 2-player game when ``player`` is 1, so that
    the roles of the row player are played by ``player``."""
    if player == 0:
        return game
    u = np.transpose(game.utilities, (1, 0, 2))[..., ::-1]
    return NormalFormGame(game.action_names[::-1], u)
