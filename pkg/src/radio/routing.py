"""
Intra-coalition relay routing.

Members forward fusion data to their ground leader over other members of the
same coalition; each hop costs (d / overhead_ref_m) ** path_loss_exp.
"""

from typing import Dict, Iterable, List, NamedTuple, Tuple

import networkx as nx

from scenario.models import GameWeights, Point, UavSpec
from utils.errors import SimulationError

from .links import distance, in_range


class Unreachable(SimulationError):
    """No in-range hop sequence connects the member to the leader."""

    def __init__(self, member: int, leader: int) -> None:
        super().__init__(f"UAV {member} cannot reach leader {leader}")
        self.member = member
        self.leader = leader


class RelayPath(NamedTuple):
    hops: List[int]
    cost: float


def hop_cost(d: float, weights: GameWeights) -> float:
    return (d / weights.overhead_ref_m) ** weights.path_loss_exp


def coalition_graph(
    members: Iterable[int],
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    weights: GameWeights
) -> nx.Graph:
    """Undirected graph of in-range member pairs weighted by hop cost."""
    nodes = sorted(members)
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            if in_range(specs[a], positions[a], specs[b], positions[b]):
                graph.add_edge(a, b, weight=hop_cost(distance(positions[a], positions[b]), weights))
    return graph


def relay_path(
    member: int,
    leader: int,
    members: Iterable[int],
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    weights: GameWeights
) -> RelayPath:
    """
    Minimum-cost path from a member to its leader through coalition members only.

    Returns:
        RelayPath whose hops run from the first relay to the leader (empty when member == leader)

    Raises:
        Unreachable: The coalition is fragmented between member and leader
    """
    if member == leader:
        return RelayPath([], 0.0)
    graph = coalition_graph(members, positions, specs, weights)
    try:
        cost, path = nx.single_source_dijkstra(graph, member, target=leader, weight="weight")
    except nx.NetworkXNoPath:
        raise Unreachable(member, leader)
    return RelayPath(list(path[1:]), float(cost))


def leader_routes(
    leader: int,
    members: Iterable[int],
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    weights: GameWeights
) -> Dict[int, Tuple[float, int]]:
    """
    Route every member to the leader at once.

    Returns:
        member -> (path cost, hop count) for reachable members, the leader included at (0, 0)
    """
    graph = coalition_graph(members, positions, specs, weights)
    costs, paths = nx.single_source_dijkstra(graph, leader, weight="weight")
    return {m: (float(costs[m]), len(paths[m]) - 1) for m in sorted(costs)}
