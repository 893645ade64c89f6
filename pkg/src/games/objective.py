"""
Task-driven objective: importance-weighted coverage minus transmission overhead.

The global objective is the exact potential of the coalition formation game,
so every agent's marginal contribution is measured against it.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel

from coalition.partition import Coalition, PartitionState
from radio.routing import leader_routes
from scenario.importance import cell_centers, importance_grid, importance_values
from scenario.models import GameWeights, ImportanceField, Point, Scenario, UavSpec

# cache entries kept before a cache is flushed
CACHE_LIMIT = 200_000


class ObjectiveBreakdown(BaseModel):
    coverage: float
    overhead: float
    objective: float

    def consistent(self, weights: GameWeights, rel_tol: float = 1e-9) -> bool:
        expected = weights.w_cov * self.coverage - weights.w_ovh * self.overhead
        return abs(self.objective - expected) <= rel_tol * max(1.0, abs(expected))


@dataclass
class CoverageGrid:
    """Cell weights with their center coordinates, flattened."""
    weights: np.ndarray
    cx: np.ndarray
    cy: np.ndarray
    shape: Tuple[int, int]

    @property
    def total(self) -> float:
        return float(self.weights.sum())


def coverage_grid(scenario: Scenario, fields: Optional[Sequence[ImportanceField]] = None) -> CoverageGrid:
    grid = importance_grid(scenario, fields)
    cx, cy = cell_centers(scenario)
    return CoverageGrid(grid.ravel(), cx.ravel(), cy.ravel(), grid.shape)


def _disk_mask(grid: CoverageGrid, p: Point, radius: float) -> np.ndarray:
    return (grid.cx - p[0]) ** 2 + (grid.cy - p[1]) ** 2 <= radius ** 2


def weighted_coverage(positions: Iterable[Point], radii: Iterable[float], grid: CoverageGrid) -> float:
    """
    Share of importance weight lying within reach of at least one UAV.

    Args:
        positions: UAV positions
        radii: Matching coverage radii
        grid: Importance grid

    Returns:
        Covered weight / total weight, in [0, 1]; 0 when the grid carries no weight
    """
    total = grid.total
    if total <= 0.0:
        return 0.0
    covered = np.zeros(grid.weights.shape, dtype=bool)
    for p, r in zip(positions, radii):
        covered |= _disk_mask(grid, p, r)
    return float(grid.weights[covered].sum()) / total


class ObjectiveEvaluator:
    """
    Evaluates the global objective with memoized routes and coverage masks.

    Route tables depend only on a coalition's ground leader and its members'
    positions; coverage masks only on a position and radius. Both are reused
    across the many hypothetical states an iteration explores.
    """

    def __init__(self, specs: Dict[int, UavSpec], weights: GameWeights, grid: CoverageGrid,
                 require_backhaul: bool = True) -> None:
        self.specs = specs
        self.weights = weights
        self.grid = grid
        self.require_backhaul = require_backhaul
        self._routes: Dict[tuple, Dict[int, Tuple[float, int]]] = {}
        self._masks: Dict[tuple, np.ndarray] = {}

    @classmethod
    def for_scenario(cls, scenario: Scenario, fields: Optional[Sequence[ImportanceField]] = None,
                     weights: Optional[GameWeights] = None) -> "ObjectiveEvaluator":
        return cls(scenario.specs, weights or scenario.weights, coverage_grid(scenario, fields),
                   scenario.require_backhaul)

    def with_weights(self, weights: GameWeights) -> "ObjectiveEvaluator":
        """Same grid and caches' inputs, different objective weights."""
        return ObjectiveEvaluator(self.specs, weights, self.grid, self.require_backhaul)

    def set_grid(self, grid: CoverageGrid) -> None:
        # masks depend on cell centers only, which do not change with the fields
        self.grid = grid

    def set_fields(self, fields: Sequence[ImportanceField]) -> None:
        """Re-weight the same cells for a new active field set."""
        weights = importance_values(fields, self.grid.cx, self.grid.cy)
        self.set_grid(CoverageGrid(weights, self.grid.cx, self.grid.cy, self.grid.shape))

    def routes(self, c: Coalition, positions: Dict[int, Point]) -> Dict[int, Tuple[float, int]]:
        members = tuple(sorted(c.members))
        key = (c.ground_leader, members, tuple(positions[m] for m in members))
        cached = self._routes.get(key)
        if cached is None:
            if len(self._routes) >= CACHE_LIMIT:
                self._routes.clear()
            cached = leader_routes(c.ground_leader, members, positions, self.specs, self.weights)
            self._routes[key] = cached
        return cached

    def coalition_overhead(self, c: Coalition, positions: Dict[int, Point]) -> float:
        routes = self.routes(c, positions)
        total = 0.0
        for m in sorted(c.members):
            total += routes[m][0] if m in routes else self.weights.p_unreach
        return total

    def overhead(self, p: PartitionState, positions: Dict[int, Point]) -> float:
        return sum(self.coalition_overhead(p.coalitions[cid], positions) for cid in sorted(p.coalitions))

    def delivering(self, p: PartitionState, positions: Dict[int, Point]) -> List[int]:
        """UAVs with a relay path to a ground leader that has backhaul."""
        if not self.require_backhaul:
            return sorted(positions)
        reached: Set[int] = set()
        for cid in sorted(p.coalitions):
            c = p.coalitions[cid]
            if self.specs[c.ground_leader].ground_link_quality > 0.0:
                reached.update(self.routes(c, positions))
        return sorted(reached)

    def _mask(self, p: Point, radius: float) -> np.ndarray:
        key = (p, radius)
        mask = self._masks.get(key)
        if mask is None:
            if len(self._masks) >= CACHE_LIMIT:
                self._masks.clear()
            mask = _disk_mask(self.grid, p, radius)
            self._masks[key] = mask
        return mask

    def coverage(self, uavs: Iterable[int], positions: Dict[int, Point]) -> float:
        total = self.grid.total
        if total <= 0.0:
            return 0.0
        covered = np.zeros(self.grid.weights.shape, dtype=bool)
        for u in uavs:
            covered |= self._mask(positions[u], self.specs[u].coverage_radius_m)
        return float(self.grid.weights[covered].sum()) / total

    def evaluate(self, p: PartitionState, positions: Dict[int, Point]) -> ObjectiveBreakdown:
        coverage = self.coverage(self.delivering(p, positions), positions)
        overhead = self.overhead(p, positions)
        objective = self.weights.w_cov * coverage - self.weights.w_ovh * overhead
        return ObjectiveBreakdown(coverage=coverage, overhead=overhead, objective=objective)


def transmission_overhead(p: PartitionState, positions: Dict[int, Point], specs: Dict[int, UavSpec],
                          weights: GameWeights) -> float:
    """
    Sum over coalitions and members of the relay-path cost to the ground leader.

    Unreachable members contribute weights.p_unreach each.
    """
    evaluator = ObjectiveEvaluator(specs, weights, CoverageGrid(np.zeros(0), np.zeros(0), np.zeros(0), (0, 0)))
    return evaluator.overhead(p, positions)


def global_objective(p: PartitionState, positions: Dict[int, Point], grid: CoverageGrid,
                     weights: GameWeights, specs: Dict[int, UavSpec],
                     require_backhaul: bool = True) -> ObjectiveBreakdown:
    """
    w_cov * coverage - w_ovh * overhead for one state.

    Coverage counts only UAVs whose data reaches a backhaul-equipped ground leader
    unless require_backhaul is False.
    """
    return ObjectiveEvaluator(specs, weights, grid, require_backhaul).evaluate(p, positions)
