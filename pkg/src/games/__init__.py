"""
Game layer: objective, agent actions, switch dynamics, channel potential game.

Public API: weighted_coverage, transmission_overhead, global_objective,
marginal_utility, switch_step, channel_best_response
"""

from .actions import COMPASS, STAY, ActionKind, GameAction, GameState, apply_action, candidate_actions
from .channels import (
    channel_best_response, channel_costs, channel_equilibrium, channel_potential, channel_round, is_nash
)
from .objective import (
    CoverageGrid, ObjectiveBreakdown, ObjectiveEvaluator, coverage_grid, global_objective,
    transmission_overhead, weighted_coverage
)
from .oracle import OracleResult, best_partition
from .switching import (
    IMPROVEMENT_TOL, BestResponse, Candidate, LogLinear, SwitchOutcome, SwitchRule, boltzmann_probabilities,
    evaluate_candidates, improving_actions, is_switch_stable, marginal_utility, switch_step
)

__all__ = [
    'COMPASS',
    'IMPROVEMENT_TOL',
    'STAY',
    'ActionKind',
    'BestResponse',
    'Candidate',
    'CoverageGrid',
    'GameAction',
    'GameState',
    'LogLinear',
    'ObjectiveBreakdown',
    'ObjectiveEvaluator',
    'OracleResult',
    'SwitchOutcome',
    'SwitchRule',
    'apply_action',
    'best_partition',
    'boltzmann_probabilities',
    'candidate_actions',
    'channel_best_response',
    'channel_costs',
    'channel_equilibrium',
    'channel_potential',
    'channel_round',
    'coverage_grid',
    'evaluate_candidates',
    'global_objective',
    'improving_actions',
    'is_nash',
    'is_switch_stable',
    'marginal_utility',
    'switch_step',
    'transmission_overhead',
    'weighted_coverage'
]
