"""
Analytic per-step traffic accounting by message class.
"""

from enum import Enum
from typing import TYPE_CHECKING, Dict, Iterable, Optional

import numpy as np
from pydantic import BaseModel

from scenario.models import GameWeights, Point, UavSpec

from .links import range_matrix
from .matching import RelayMatching
from .routing import leader_routes

if TYPE_CHECKING:
    from coalition.partition import PartitionState


class MessageClass(str, Enum):
    SAFETY_BROADCAST = "safety"
    INTRA_COALITION_FUSION = "fusion"
    INTER_COALITION_SHARE = "inter"


class TrafficTally(BaseModel):
    """Message counts of one step."""
    safety: int = 0
    fusion: int = 0
    inter: int = 0
    relayed: int = 0

    def by_class(self) -> Dict[MessageClass, int]:
        return {
            MessageClass.SAFETY_BROADCAST: self.safety,
            MessageClass.INTRA_COALITION_FUSION: self.fusion,
            MessageClass.INTER_COALITION_SHARE: self.inter,
        }


def account_traffic(
    partition: "PartitionState",
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    weights: GameWeights,
    matching: Optional[RelayMatching] = None,
    doubled: Iterable[int] = ()
) -> TrafficTally:
    """
    Count this step's transmissions.

    - safety: one per UAV per in-range neighbor, doubled for members of emergency
      coalitions and for the UAVs in `doubled`
    - fusion: one per hop on every member -> ground-leader path; an unreachable member
      matched to a relay drone adds a single hop
    - inter: one per pair of adjacent coalitions (shared member or an in-range member pair)

    Args:
        partition: Current coalition structure
        positions: Current positions
        specs: UAV specs
        weights: Routing cost parameters
        matching: Relay assignments for unreachable members, if any
        doubled: UAVs whose coalition hit an emergency this step, even if merged away since

    Returns:
        TrafficTally
    """
    ids = sorted(positions)
    index = {u: i for i, u in enumerate(ids)}
    _, linked = range_matrix(ids, positions, specs)

    in_emergency = {
        u for c in partition.coalitions.values() if c.emergency for u in c.members
    } | set(doubled)
    neighbors = linked.sum(axis=1)
    safety = sum(int(neighbors[index[u]]) * (2 if u in in_emergency else 1) for u in ids)

    assigned = matching.assignments if matching is not None else {}
    fusion = 0
    relayed = 0
    for cid in sorted(partition.coalitions):
        c = partition.coalitions[cid]
        routes = leader_routes(c.ground_leader, c.members, positions, specs, weights)
        for m in sorted(c.members):
            if m in routes:
                fusion += routes[m][1]
            elif m in assigned:
                fusion += 1
                relayed += 1

    inter = 0
    cids = sorted(partition.coalitions)
    for i, a in enumerate(cids):
        ma = partition.coalitions[a].members
        rows = [index[u] for u in sorted(ma)]
        for b in cids[i + 1:]:
            mb = partition.coalitions[b].members
            if ma & mb or linked[np.ix_(rows, [index[u] for u in sorted(mb)])].any():
                inter += 1

    return TrafficTally(safety=safety, fusion=fusion, inter=inter, relayed=relayed)
