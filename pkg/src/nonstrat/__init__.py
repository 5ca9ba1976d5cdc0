"""Behavioral models for finite normal-form games.

Elementary (nonstrategic) level-0 rules built from potential maps, strategic
models (quantal best response, level-k, cognitive hierarchy, QRE), and probes
that search for game pairs separating the two.
"""

from .aggregate import (AggregatedModel, aggregation_counterexample, evaluate_aggregation,
                        joint_collision_witness, mixture)
from .catalog import pennies_game, prisoners_dilemma
from .classify import (Classification, Verdict, WitnessReport, classify_model,
                       dominance_responsiveness_falsifier, generate_dominance_reversed_pair,
                       other_responsiveness_witness, self_responsiveness_construction,
                       theorem3_game_pair)
from .elementary import (ElementaryModel, PotentialFunction, collision_witness,
                         dictatorship_probe, evaluate_elementary, make_fair, make_max_welfare,
                         make_maxmax, make_maxmin, make_minimax_regret, make_soft_variant,
                         make_uniform, potential_map, projection, spread_potential,
                         welfare_potential)
from .game import (GameError, NormalFormGame, action_values, best_response_set,
                   compare_behaviors, expected_utility, is_dominance_reversed_pair,
                   product_distribution, strictly_dominant_action, strictly_dominates,
                   verify_correlated_equilibrium, verify_nash)
from .gameio import parse_game, random_game, serialize_game
from .modelspec import parse_model
from .strategic import (IterativeModel, QreSolution, QuantalResponseModel,
                        cognitive_hierarchy_prediction, level_k_prediction, make_qbr_model,
                        qre_solve, quantal_best_response, quantal_cognitive_hierarchy_prediction,
                        quantal_level_k_prediction)

__version__ = "0.1.0"
