"""
Inter-coalition channel selection as an exact potential game.

Two coalitions on the same channel interfere by 1 / max(d, eps)^2, d being the
distance between their ground leaders. Each coalition's cost is the interference
it receives; total same-channel interference is the potential.
"""

import logging
from typing import Dict, List

from coalition.partition import PartitionState
from radio.links import distance
from scenario.models import Point

logger = logging.getLogger(__name__)

DEFAULT_ROUNDS = 100


def pair_interference(p: PartitionState, positions: Dict[int, Point], a: int, b: int, eps: float = 1.0) -> float:
    d = distance(positions[p.coalitions[a].ground_leader], positions[p.coalitions[b].ground_leader])
    return 1.0 / max(d, eps) ** 2


def channel_costs(cid: int, p: PartitionState, positions: Dict[int, Point], channels: int,
                  eps: float = 1.0) -> List[float]:
    """Interference cid would receive on each channel, the others staying put."""
    costs = [0.0] * channels
    for other in sorted(p.coalitions):
        if other != cid:
            costs[p.coalitions[other].channel] += pair_interference(p, positions, cid, other, eps)
    return costs


def channel_best_response(cid: int, p: PartitionState, positions: Dict[int, Point], channels: int,
                          eps: float = 1.0) -> int:
    """
    Least-interfered channel for a coalition; ties go to the lowest index.

    Args:
        cid: Deciding coalition
        p: Partition with current channel assignment
        positions: Current positions
        channels: Number of channels (>= 1)
        eps: Distance floor in meters

    Returns:
        Channel index
    """
    if channels < 1:
        raise ValueError("need at least one channel")
    costs = channel_costs(cid, p, positions, channels, eps)
    return min(range(channels), key=lambda ch: (costs[ch], ch))


def channel_round(p: PartitionState, positions: Dict[int, Point], channels: int, eps: float = 1.0) -> int:
    """
    One sequential pass of best responses in ascending coalition id.

    A coalition only moves when the best response strictly lowers its cost, so the
    potential strictly decreases with every change.

    Returns:
        Number of coalitions that changed channel
    """
    changed = 0
    for cid in sorted(p.coalitions):
        c = p.coalitions[cid]
        if c.channel >= channels:
            c.channel = 0
        costs = channel_costs(cid, p, positions, channels, eps)
        best = channel_best_response(cid, p, positions, channels, eps)
        if costs[best] < costs[c.channel]:
            c.channel = best
            changed += 1
    return changed


def channel_equilibrium(p: PartitionState, positions: Dict[int, Point], channels: int, eps: float = 1.0,
                        max_rounds: int = DEFAULT_ROUNDS) -> int:
    """
    Repeat rounds until one passes with no change (a pure Nash equilibrium).

    Returns:
        Rounds executed, the final quiet round included
    """
    for rounds in range(1, max_rounds + 1):
        if channel_round(p, positions, channels, eps) == 0:
            return rounds
    logger.warning(f"Channel game still moving after {max_rounds} rounds")
    return max_rounds


def channel_potential(p: PartitionState, positions: Dict[int, Point], eps: float = 1.0) -> float:
    """Total interference over same-channel coalition pairs."""
    cids = sorted(p.coalitions)
    total = 0.0
    for i, a in enumerate(cids):
        for b in cids[i + 1:]:
            if p.coalitions[a].channel == p.coalitions[b].channel:
                total += pair_interference(p, positions, a, b, eps)
    return total


def is_nash(p: PartitionState, positions: Dict[int, Point], channels: int, eps: float = 1.0) -> bool:
    """No coalition can strictly lower its interference by a single deviation."""
    for cid in sorted(p.coalitions):
        costs = channel_costs(cid, p, positions, channels, eps)
        if min(costs) < costs[p.coalitions[cid].channel]:
            return False
    return True
