"""
Emergency communication trigger.

A coalition is in emergency when its ground leader's backhaul falls below a
quality floor or when some member can no longer reach the ground leader.
"""

import logging
from typing import NamedTuple, Optional

from radio.links import distance, link_quality
from radio.routing import leader_routes
from scenario.models import GameWeights

from .events import EventKind, TraceEvent
from .partition import PartitionState, SwarmView

logger = logging.getLogger(__name__)


class EmergencyCheck(NamedTuple):
    triggered: bool
    reason: str = ""
    merge_with: Optional[int] = None
    event: Optional[TraceEvent] = None


def _linked(p: PartitionState, a: int, b: int, view: SwarmView, weights: GameWeights) -> bool:
    specs, pos = view.specs, view.positions
    return any(
        link_quality(specs[u], pos[u], specs[v], pos[v], weights.overhead_ref_m, weights.path_loss_exp) > 0.0
        for u in sorted(p.coalitions[a].members)
        for v in sorted(p.coalitions[b].members)
    )


def nearest_backhaul_coalition(p: PartitionState, cid: int, theta: float, view: SwarmView,
                               weights: GameWeights) -> Optional[int]:
    """Closest coalition (by ground-leader distance) with backhaul >= theta that is in link range of cid."""
    leader_pos = view.positions[p.coalitions[cid].ground_leader]
    best = None
    for other in sorted(p.coalitions):
        if other == cid:
            continue
        c = p.coalitions[other]
        if view.specs[c.ground_leader].ground_link_quality < theta:
            continue
        if not _linked(p, cid, other, view, weights):
            continue
        d = distance(leader_pos, view.positions[c.ground_leader])
        if best is None or d < best[0]:
            best = (d, other)
    return None if best is None else best[1]


def check_emergency(p: PartitionState, cid: int, theta: float, view: SwarmView,
                    weights: GameWeights, request_merge: bool = True) -> EmergencyCheck:
    """
    Evaluate and record a coalition's emergency state.

    Args:
        p: Partition (the coalition's flag is updated in place)
        cid: Coalition to check
        theta: Backhaul quality floor
        view: World view
        weights: Link parameters
        request_merge: Look for a coalition to merge with when triggered

    Returns:
        EmergencyCheck; merge_with names the requested partner, if any
    """
    c = p.coalition(cid)
    reason = ""
    if view.specs[c.ground_leader].ground_link_quality < theta:
        reason = "no_backhaul"
    else:
        routes = leader_routes(c.ground_leader, c.members, view.positions, view.specs, weights)
        if len(routes) < len(c.members):
            reason = "fragmented"
    c.emergency = bool(reason)
    if not reason:
        return EmergencyCheck(False)

    partner = nearest_backhaul_coalition(p, cid, theta, view, weights) if request_merge else None
    detail = reason if partner is None else f"{reason}; merge requested with {partner}"
    event = view.emit(EventKind.EMERGENCY, (cid,) if partner is None else (cid, partner),
                      sorted(c.members), detail)
    return EmergencyCheck(True, reason, partner, event)
