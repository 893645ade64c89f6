"""
Single-index baselines for the multi-index comparison.

Both are evaluated at the scenario's true weights.
"""

import logging
from typing import List, NamedTuple, Optional

from coalition.operations import found
from coalition.partition import PartitionState, SwarmView
from games.objective import ObjectiveBreakdown, ObjectiveEvaluator
from learning.config import LearnerConfig
from scenario.models import ImportanceField, Scenario

from .simulator import simulate

logger = logging.getLogger(__name__)

BASELINES = ("coverage-only", "overhead-only", "game")


class BaselineResult(NamedTuple):
    name: str
    optimized: ObjectiveBreakdown
    evaluated: ObjectiveBreakdown


def coverage_only(scenario: Scenario, config: Optional[LearnerConfig] = None,
                  seed: Optional[int] = None) -> BaselineResult:
    """Play the game with w_ovh forced to 0, then score the final state at the true weights."""
    blind = scenario.model_copy(update={"weights": scenario.weights.model_copy(update={"w_ovh": 0.0})})
    _, state = simulate(blind, config, seed)
    optimized = state.game.objective()
    true = state.game.evaluator.with_weights(scenario.weights)
    evaluated = true.evaluate(state.partition, state.positions)
    logger.info(f"Coverage-only baseline: {evaluated.objective:.6f} at true weights")
    return BaselineResult("coverage-only", optimized, evaluated)


def overhead_only(scenario: Scenario, fields: Optional[List[ImportanceField]] = None) -> BaselineResult:
    """
    Every UAV in one coalition, all parked at the elected ground leader's start position.

    Args:
        scenario: Scenario to score
        fields: Active field set to score against (default: the scenario's own)
    """
    fields = list(scenario.fields) if fields is None else list(fields)
    evaluator = ObjectiveEvaluator.for_scenario(scenario, fields)
    specs = scenario.specs
    start = {u.id: (float(u.start_pos[0]), float(u.start_pos[1])) for u in scenario.uavs}
    p = PartitionState(transceivers={u: s.transceivers for u, s in specs.items()})
    cid = found(p, sorted(specs), SwarmView(specs, start, fields))
    leader = start[p.coalitions[cid].ground_leader]
    positions = {u: leader for u in sorted(specs)}
    evaluated = evaluator.evaluate(p, positions)
    logger.info(f"Overhead-only baseline: {evaluated.objective:.6f} at true weights")
    return BaselineResult("overhead-only", evaluated, evaluated)


def compare_baselines(scenario: Scenario, config: Optional[LearnerConfig] = None,
                      seed: Optional[int] = None) -> List[BaselineResult]:
    """
    The coalition-game run next to both baselines.

    The overhead-only layout is scored against the field set active at the end
    of the game run, so all three see the same mission.
    """
    _, state = simulate(scenario, config, seed)
    outcome = state.game.objective()
    return [
        BaselineResult("game", outcome, outcome),
        coverage_only(scenario, config, seed),
        overhead_only(scenario, state.fields),
    ]
