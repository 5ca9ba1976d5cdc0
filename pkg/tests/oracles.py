"""Brute-force reference implementations, written with plain loops over
pure profiles and sharing no code with the package beyond the game object."""

import itertools
import math


def profiles(shape):
    return itertools.product(*(range(k) for k in shape))


def eu(game, player, profile):
    total = 0.0
    for a in profiles(game.shape):
        p = 1.0
        for j, aj in enumerate(a):
            p *= profile[j][aj]
        total += p * game.utilities[a + (player,)]
    return total


def action_eu(game, player, profile):
    out = []
    for ai in range(game.shape[player]):
        s = list(profile)
        s[player] = [1.0 if b == ai else 0.0 for b in range(game.shape[player])]
        out.append(eu(game, player, s))
    return out


def br_uniform(game, player, profile, tie=1e-9):
    v = action_eu(game, player, profile)
    best = max(v)
    support = [a for a, x in enumerate(v) if x >= best - tie]
    return [1.0 / len(support) if a in support else 0.0 for a in range(len(v))]


def qbr(game, player, profile, lam):
    v = action_eu(game, player, profile)
    m = max(v)
    w = [math.exp(lam * (x - m)) for x in v]
    z = sum(w)
    return [x / z for x in w]


def _respond(game, belief, lam):
    if lam is None:
        return [br_uniform(game, i, belief) for i in range(game.num_players)]
    return [qbr(game, i, belief, lam) for i in range(game.num_players)]


def _mix(weights, profs):
    n = len(profs[0])
    return [[sum(w * p[i][a] for w, p in zip(weights, profs)) for a in range(len(profs[0][i]))]
            for i in range(n)]


def level_k(game, s0, weights, lam=None):
    levels = [list(map(list, s0))]
    for _ in range(1, len(weights)):
        levels.append(_respond(game, levels[-1], lam))
    return _mix(weights, levels)


def cognitive_hierarchy(game, s0, weights, lam=None):
    levels = [list(map(list, s0))]
    for k in range(1, len(weights)):
        z = sum(weights[:k])
        belief = _mix([w / z for w in weights[:k]], levels)
        levels.append(_respond(game, belief, lam))
    return _mix(weights, levels)
