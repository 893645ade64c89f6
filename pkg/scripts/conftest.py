"""
Shared pytest fixtures for the simulator test suite.
"""

import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from coalition.events import TraceEvent  # noqa: E402
from coalition.operations import initial_partition  # noqa: E402
from coalition.partition import SwarmView  # noqa: E402
from games.actions import GameState  # noqa: E402
from games.objective import ObjectiveEvaluator  # noqa: E402
from scenario.defaults import fire_scenario  # noqa: E402
from scenario.models import AreaBounds, GameWeights, ImportanceField, Scenario, UavSpec  # noqa: E402


def uav(uid: int, x: float, y: float, **kwargs) -> UavSpec:
    """UavSpec at (x, y) with defaults overridable by keyword."""
    return UavSpec(id=uid, start_pos=(x, y), **kwargs)


def small_scenario(uavs: Sequence[UavSpec], fields: Optional[List[ImportanceField]] = None,
                   **kwargs) -> Scenario:
    """Scenario on the default 10 km area with a central field unless told otherwise."""
    data = dict(
        area=AreaBounds(),
        fields=[ImportanceField(center=(5_000.0, 5_000.0))] if fields is None else fields,
        uavs=list(uavs),
        seed=7,
    )
    data.update(kwargs)
    return Scenario(**data)


def positions_of(scenario: Scenario) -> Dict[int, Tuple[float, float]]:
    return {u.id: (float(u.start_pos[0]), float(u.start_pos[1])) for u in scenario.uavs}


def view_for(scenario: Scenario, events: Optional[List[TraceEvent]] = None) -> SwarmView:
    return SwarmView(scenario.specs, positions_of(scenario), list(scenario.fields), 0,
                     [] if events is None else events)


def game_for(scenario: Scenario, allow_moves: bool = True, max_coalitions: Optional[int] = None,
             weights: Optional[GameWeights] = None) -> GameState:
    """Singleton-start game state for a scenario, emitting events into a fresh list."""
    view = view_for(scenario)
    partition = initial_partition(scenario.specs, view)
    return GameState(
        partition=partition,
        positions=view.positions,
        fields=view.fields,
        evaluator=ObjectiveEvaluator.for_scenario(scenario, view.fields, weights),
        area=scenario.area,
        allow_overlap=scenario.allow_overlap,
        allow_moves=allow_moves,
        max_coalitions=max_coalitions,
        events=view.events,
    )


@pytest.fixture
def fire() -> Scenario:
    return fire_scenario()


@pytest.fixture
def quiet_fire() -> Scenario:
    """Default scenario without scripted directives and a short horizon."""
    return fire_scenario(directives=[], max_steps=40)
