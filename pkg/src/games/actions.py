"""
Agent actions of the coalition formation game and the shared game state.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Dict, List, NamedTuple, Optional

from coalition.events import TraceEvent
from coalition.leaders import refresh_leaders
from coalition.operations import join, leave, switch_primary
from coalition.partition import PartitionState, SwarmView
from scenario.models import AreaBounds, ImportanceField, Point, UavSpec

from .objective import ObjectiveBreakdown, ObjectiveEvaluator


class ActionKind(IntEnum):
    STAY = 0
    MOVE = 1
    SWITCH_PRIMARY = 2
    NEW_COALITION = 3
    JOIN_SECONDARY = 4
    LEAVE_SECONDARY = 5


class GameAction(NamedTuple):
    kind: ActionKind
    target: Optional[int] = None

    def __str__(self) -> str:
        return self.kind.name.lower() if self.target is None else f"{self.kind.name.lower()}({self.target})"


STAY = GameAction(ActionKind.STAY)

# waypoint lattice offsets, indexed 1..8 clockwise from north
COMPASS = {
    1: (0, 1), 2: (1, 1), 3: (1, 0), 4: (1, -1),
    5: (0, -1), 6: (-1, -1), 7: (-1, 0), 8: (-1, 1),
}


@dataclass
class GameState:
    """
    Everything a switch decision reads or mutates.

    positions is shared with the SwarmView handed to coalition operations.
    """
    partition: PartitionState
    positions: Dict[int, Point]
    fields: List[ImportanceField]
    evaluator: ObjectiveEvaluator
    area: AreaBounds
    allow_overlap: bool = True
    allow_moves: bool = True
    max_coalitions: Optional[int] = None
    step: int = 0
    events: Optional[List[TraceEvent]] = field(default=None, repr=False)

    @property
    def specs(self) -> Dict[int, UavSpec]:
        return self.evaluator.specs

    def view(self) -> SwarmView:
        return SwarmView(self.specs, self.positions, self.fields, self.step, self.events)

    def hypothetical(self) -> "GameState":
        """Independent copy that emits no events."""
        return GameState(self.partition.copy(), dict(self.positions), self.fields, self.evaluator,
                         self.area, self.allow_overlap, self.allow_moves, self.max_coalitions, self.step, None)

    def objective(self) -> ObjectiveBreakdown:
        return self.evaluator.evaluate(self.partition, self.positions)


def waypoint(state: GameState, agent: int, direction: int) -> Point:
    dx, dy = COMPASS[direction]
    step = state.specs[agent].max_move_m
    x, y = state.positions[agent]
    return state.area.clamp((x + dx * step, y + dy * step))


def candidate_actions(agent: int, state: GameState) -> List[GameAction]:
    """
    Feasible actions in ordinal order: Stay, moves, primary switches, founding a
    coalition, joining and leaving secondaries. Infeasible actions never appear.
    """
    p = state.partition
    primary = p.primary_of[agent]
    actions = [STAY]
    if state.allow_moves and state.specs[agent].max_move_m > 0:
        here = state.positions[agent]
        actions.extend(GameAction(ActionKind.MOVE, d) for d in COMPASS if waypoint(state, agent, d) != here)
    actions.extend(GameAction(ActionKind.SWITCH_PRIMARY, cid) for cid in sorted(p.coalitions) if cid != primary)
    at_cap = state.max_coalitions is not None and len(p.coalitions) >= state.max_coalitions
    if len(p.coalitions[primary].members) > 1 and not at_cap:
        actions.append(GameAction(ActionKind.NEW_COALITION))
    if state.allow_overlap and p.free_slots(agent) > 0:
        actions.extend(GameAction(ActionKind.JOIN_SECONDARY, cid)
                       for cid in sorted(p.coalitions) if agent not in p.coalitions[cid].members)
    actions.extend(GameAction(ActionKind.LEAVE_SECONDARY, cid) for cid in p.secondaries(agent))
    return actions


def apply_action(agent: int, action: GameAction, state: GameState) -> None:
    """Apply an action to the state in place, re-electing leaders where needed."""
    view = state.view()
    p = state.partition
    if action.kind is ActionKind.STAY:
        return
    if action.kind is ActionKind.MOVE:
        state.positions[agent] = waypoint(state, agent, action.target)
        for cid in sorted(p.membership[agent]):
            refresh_leaders(p.coalitions[cid], view)
    elif action.kind is ActionKind.SWITCH_PRIMARY:
        switch_primary(p, agent, action.target, view)
    elif action.kind is ActionKind.NEW_COALITION:
        switch_primary(p, agent, None, view)
    elif action.kind is ActionKind.JOIN_SECONDARY:
        join(p, agent, action.target, view)
    elif action.kind is ActionKind.LEAVE_SECONDARY:
        leave(p, agent, action.target, view)
