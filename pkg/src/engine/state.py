"""
Mutable world state of one simulation run.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set

import numpy as np

from coalition.events import TraceEvent
from coalition.operations import initial_partition, random_partition
from coalition.partition import PartitionState, SwarmView
from games.actions import GameState
from games.objective import ObjectiveEvaluator
from learning.config import LearnerConfig
from learning.orchestrator import LearnerState
from scenario.models import ImportanceField, Point, Scenario

from .trace import MetricsRecord

logger = logging.getLogger(__name__)


@dataclass
class WorldState:
    """
    Everything one run owns exclusively.

    Positions, fields and the event list are shared by reference with the game
    state so every phase sees the same world.
    """
    scenario: Scenario
    game: GameState
    learner: LearnerState
    rng: np.random.Generator
    seed: int
    events: List[TraceEvent] = field(default_factory=list)
    metrics: List[MetricsRecord] = field(default_factory=list)
    history: List[float] = field(default_factory=list)
    # member sets whose emergency was already reported (and merge requested at most once)
    emergency_seen: Set[FrozenSet[int]] = field(default_factory=set)
    converged_at: Optional[int] = None
    directive_cursor: int = 0

    @property
    def step(self) -> int:
        return self.game.step

    @property
    def positions(self) -> Dict[int, Point]:
        return self.game.positions

    @property
    def partition(self) -> PartitionState:
        return self.game.partition

    @property
    def fields(self) -> List[ImportanceField]:
        return self.game.fields

    @property
    def config(self) -> LearnerConfig:
        return self.learner.config

    def view(self) -> SwarmView:
        return self.game.view()


def initialize(scenario: Scenario, learner_config: Optional[LearnerConfig] = None,
               seed: Optional[int] = None) -> WorldState:
    """
    Build the step-0 world for a scenario.

    Args:
        scenario: Validated scenario
        learner_config: Learning settings (default: LearnerConfig())
        seed: RNG seed (default: scenario.seed)

    Returns:
        WorldState with UAVs at their start positions, one singleton coalition
        per UAV (or a random partition when scenario.random_start is set) and
        leaders elected
    """
    config = learner_config or LearnerConfig()
    seed = scenario.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    specs = scenario.specs
    events: List[TraceEvent] = []
    positions = {u.id: (float(u.start_pos[0]), float(u.start_pos[1])) for u in scenario.uavs}
    fields = list(scenario.fields)
    view = SwarmView(specs, positions, fields, 0, events)

    if scenario.random_start:
        n_groups = max(1, math.isqrt(len(specs)))
        partition = random_partition(specs, n_groups, rng, view)
    else:
        partition = initial_partition(specs, view)

    game = GameState(
        partition=partition,
        positions=positions,
        fields=fields,
        evaluator=ObjectiveEvaluator.for_scenario(scenario, fields),
        area=scenario.area,
        allow_overlap=scenario.allow_overlap,
        step=0,
        events=events,
    )
    state = WorldState(scenario, game, LearnerState.from_config(config), rng, seed, events)
    state.history.append(game.objective().objective)
    logger.debug(f"Initialized {len(specs)} UAVs in {len(partition.coalitions)} coalitions (seed {seed})")
    return state
