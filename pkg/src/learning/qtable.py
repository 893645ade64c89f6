"""
Independent per-agent tabular Q-learning.
"""

from collections import defaultdict
from typing import Dict, Hashable, List, Tuple

from games.actions import GameAction, GameState

StateKey = Tuple[Hashable, ...]


def state_key(agent: int, state: GameState) -> StateKey:
    """Discretized local state: occupied waypoint cell and membership signature."""
    spec = state.specs[agent]
    cell = spec.max_move_m if spec.max_move_m > 0 else 1.0
    x, y = state.positions[agent]
    p = state.partition
    return (
        int((x - state.area.x_min) // cell),
        int((y - state.area.y_min) // cell),
        p.primary_of[agent],
        tuple(p.secondaries(agent)),
    )


class QTable:
    """Value estimates per agent; unseen entries read as 0."""

    def __init__(self) -> None:
        self._q: Dict[int, Dict[Tuple[StateKey, GameAction], float]] = defaultdict(dict)

    def value(self, agent: int, s: StateKey, a: GameAction) -> float:
        return self._q[agent].get((s, a), 0.0)

    def best_value(self, agent: int, s: StateKey, actions: List[GameAction]) -> float:
        return max(self.value(agent, s, a) for a in actions) if actions else 0.0

    def greedy(self, agent: int, s: StateKey, actions: List[GameAction]) -> int:
        """Index of the highest-valued action; ties go to the lowest ordinal."""
        best = 0
        for i in range(1, len(actions)):
            if self.value(agent, s, actions[i]) > self.value(agent, s, actions[best]):
                best = i
        return best

    def update(self, agent: int, s: StateKey, a: GameAction, reward: float, s_next: StateKey,
               next_actions: List[GameAction], alpha: float, gamma: float) -> float:
        """Q(s,a) <- (1 - alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a'))."""
        target = reward + gamma * self.best_value(agent, s_next, next_actions)
        new = (1.0 - alpha) * self.value(agent, s, a) + alpha * target
        self._q[agent][(s, a)] = new
        return new

    def size(self) -> int:
        return sum(len(table) for table in self._q.values())
