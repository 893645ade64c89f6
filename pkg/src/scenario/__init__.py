"""
Scenario definition: mission area, importance fields, UAV roster, directives.

Public API: Scenario, load_scenario, importance_at, importance_grid
"""

from .defaults import fire_scenario, random_scenario
from .errors import ParseError, ScenarioError, ValidationError
from .importance import cell_centers, importance_at, importance_grid, importance_values
from .loader import load_scenario, parse_scenario, scenario_hash, scenario_to_json, write_scenario
from .models import (
    AreaBounds, DirectiveKind, GameWeights, ImportanceField, Point, Scenario, TaskDirective, UavSpec
)

__all__ = [
    'AreaBounds',
    'DirectiveKind',
    'GameWeights',
    'ImportanceField',
    'ParseError',
    'Point',
    'Scenario',
    'ScenarioError',
    'TaskDirective',
    'UavSpec',
    'ValidationError',
    'cell_centers',
    'fire_scenario',
    'importance_at',
    'importance_grid',
    'importance_values',
    'load_scenario',
    'parse_scenario',
    'random_scenario',
    'scenario_hash',
    'scenario_to_json',
    'write_scenario'
]
