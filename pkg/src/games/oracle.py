"""
Brute-force reference solutions for small instances.
"""

import itertools
from typing import List, NamedTuple, Tuple

from coalition.operations import found
from coalition.partition import PartitionState

from .actions import GameState
from .objective import ObjectiveBreakdown


class OracleResult(NamedTuple):
    best: ObjectiveBreakdown
    member_sets: List[Tuple[int, ...]]
    assignments_checked: int


def best_partition(state: GameState, max_coalitions: int = 2) -> OracleResult:
    """
    Enumerate every membership assignment over at most max_coalitions coalitions,
    positions fixed, each UAV in between one and min(transceivers, max_coalitions)
    of them.

    Returns:
        The best objective found and its member sets
    """
    uavs = sorted(state.positions)
    slots = list(range(max_coalitions))
    options = []
    for u in uavs:
        limit = min(state.specs[u].transceivers, max_coalitions) if state.allow_overlap else 1
        options.append([
            combo for k in range(1, limit + 1) for combo in itertools.combinations(slots, k)
        ])

    best = None
    checked = 0
    view = state.view().silent()
    for assignment in itertools.product(*options):
        groups = {s: [u for u, combo in zip(uavs, assignment) if s in combo] for s in slots}
        p = PartitionState(transceivers=dict(state.partition.transceivers))
        for s in slots:
            if groups[s]:
                found(p, groups[s], view, primary=False)
        outcome = state.evaluator.evaluate(p, state.positions)
        checked += 1
        if best is None or outcome.objective > best[0].objective:
            best = (outcome, p.member_sets())
    return OracleResult(best[0], best[1], checked)
