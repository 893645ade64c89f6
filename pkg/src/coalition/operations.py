"""
Coalition transitions: found, merge, split, join, leave, switch.

Operations mutate the PartitionState in place, re-elect leaders of every
coalition they touch, delete coalitions that become empty, and emit trace events
through the SwarmView.
"""

import logging
from typing import Callable, Dict, Iterable, Optional

import numpy as np

from scenario.models import UavSpec

from .errors import AlreadyMember, InvalidSubset, LastMembership, NoFreeTransceiver, NotAMember, UnknownCoalition
from .events import EventKind
from .leaders import elect_leaders, refresh_leaders
from .partition import Coalition, PartitionState, SwarmView

logger = logging.getLogger(__name__)

# (uav, coalition id) -> value of keeping that membership; lower is dropped first
MembershipValue = Callable[[int, int], float]


def found(p: PartitionState, members: Iterable[int], view: SwarmView, channel: int = 0,
          primary: bool = True) -> int:
    """Create a coalition from UAVs; with primary=True it becomes their home coalition."""
    member_set = set(members)
    leaders = elect_leaders(member_set, view.positions, view.specs, view.fields)
    cid = p.new_id()
    p.coalitions[cid] = Coalition(cid, member_set, leaders.ground, leaders.task, channel, leaders.no_backhaul)
    for u in member_set:
        p.membership.setdefault(u, set()).add(cid)
        if primary or u not in p.primary_of:
            p.primary_of[u] = cid
    return cid


def _drop(p: PartitionState, cid: int, view: SwarmView) -> None:
    del p.coalitions[cid]
    view.emit(EventKind.DISSOLVE, (cid,))


def _detach(p: PartitionState, u: int, cid: int, view: SwarmView) -> None:
    """Remove u from cid; re-elect or delete the coalition. Primary bookkeeping is the caller's."""
    c = p.coalitions[cid]
    c.members.discard(u)
    p.membership[u].discard(cid)
    if not c.members:
        _drop(p, cid, view)
    else:
        refresh_leaders(c, view)


def _smallest_first(p: PartitionState) -> MembershipValue:
    return lambda u, cid: float(len(p.coalitions[cid].members))


def enforce_transceiver_bound(p: PartitionState, u: int, view: SwarmView,
                              value: Optional[MembershipValue] = None) -> None:
    """Drop u's lowest-value secondary memberships until it fits its transceivers."""
    value = value or _smallest_first(p)
    while len(p.membership[u]) > p.transceivers[u]:
        worst = min(p.secondaries(u), key=lambda cid: (value(u, cid), -cid))
        _detach(p, u, worst, view)
        view.emit(EventKind.LEAVE, (worst,), (u,), "transceiver overflow")


def merge(p: PartitionState, c1: int, c2: int, view: SwarmView,
          value: Optional[MembershipValue] = None) -> int:
    """
    Merge two coalitions into a fresh one.

    Args:
        p: Partition to mutate
        c1, c2: Distinct coalition ids
        view: World view for leader election and events
        value: Ranks secondary memberships when a member overflows its transceivers

    Returns:
        Id of the union coalition

    Raises:
        UnknownCoalition: Either id is missing, or c1 == c2
    """
    if c1 == c2:
        raise UnknownCoalition(f"cannot merge coalition {c1} with itself")
    a, b = p.coalition(c1), p.coalition(c2)
    members = a.members | b.members
    del p.coalitions[c1]
    del p.coalitions[c2]
    cid = p.new_id()
    leaders = elect_leaders(members, view.positions, view.specs, view.fields)
    p.coalitions[cid] = Coalition(cid, members, leaders.ground, leaders.task, a.channel, leaders.no_backhaul)
    for u in members:
        p.membership[u] -= {c1, c2}
        p.membership[u].add(cid)
        if p.primary_of[u] in (c1, c2):
            p.primary_of[u] = cid
    view.emit(EventKind.MERGE, (c1, c2, cid), sorted(members))
    for u in sorted(members):
        enforce_transceiver_bound(p, u, view, value)
    return cid


def split(p: PartitionState, cid: int, subset: Iterable[int], view: SwarmView) -> int:
    """
    Split a subset of members off into a new coalition.

    Returns:
        Id of the new coalition; the remainder keeps cid

    Raises:
        UnknownCoalition: cid is missing
        InvalidSubset: subset is empty, not contained in cid, or all of it
    """
    c = p.coalition(cid)
    part = set(subset)
    if not part or not part < c.members:
        raise InvalidSubset(f"{sorted(part)} is not a strict non-empty subset of coalition {cid}")
    c.members -= part
    new = p.new_id()
    leaders = elect_leaders(part, view.positions, view.specs, view.fields)
    p.coalitions[new] = Coalition(new, part, leaders.ground, leaders.task, c.channel, leaders.no_backhaul)
    for u in part:
        p.membership[u].discard(cid)
        p.membership[u].add(new)
        if p.primary_of[u] == cid:
            p.primary_of[u] = new
    refresh_leaders(c, view)
    view.emit(EventKind.SPLIT, (cid, new), sorted(part))
    return new


def join(p: PartitionState, u: int, cid: int, view: SwarmView) -> None:
    """
    Add u to cid as a secondary membership.

    Raises:
        UnknownCoalition, AlreadyMember, NoFreeTransceiver
    """
    c = p.coalition(cid)
    if u in c.members:
        raise AlreadyMember(f"UAV {u} is already in coalition {cid}")
    if p.free_slots(u) <= 0:
        raise NoFreeTransceiver(f"UAV {u} has no free transceiver")
    c.members.add(u)
    p.membership[u].add(cid)
    refresh_leaders(c, view)
    view.emit(EventKind.JOIN, (cid,), (u,))


def leave(p: PartitionState, u: int, cid: int, view: SwarmView) -> None:
    """
    Remove u from cid; u must keep at least one other membership.

    Raises:
        UnknownCoalition, NotAMember, LastMembership
    """
    c = p.coalition(cid)
    if u not in c.members:
        raise NotAMember(f"UAV {u} is not in coalition {cid}")
    if len(p.membership[u]) <= 1:
        raise LastMembership(f"UAV {u} cannot leave its only coalition {cid}")
    _detach(p, u, cid, view)
    if p.primary_of[u] == cid:
        p.primary_of[u] = min(p.membership[u])
    view.emit(EventKind.LEAVE, (cid,), (u,))


def switch_primary(p: PartitionState, u: int, target: Optional[int], view: SwarmView) -> int:
    """
    Move u's home coalition to target, or to a new singleton when target is None.

    The old primary membership is given up; if u already belonged to target as a
    secondary, that membership is promoted.

    Returns:
        Id of u's new primary coalition
    """
    old = p.primary_of[u]
    if target == old:
        return old
    if target is None:
        channel = p.coalitions[old].channel
        _detach(p, u, old, view)
        new = found(p, (u,), view, channel=channel)
        view.emit(EventKind.FOUND, (new,), (u,))
    else:
        c = p.coalition(target)
        if u not in c.members:
            c.members.add(u)
            p.membership[u].add(target)
            refresh_leaders(c, view)
        _detach(p, u, old, view)
        new = target
    p.primary_of[u] = new
    view.emit(EventKind.SWITCH, (old, new), (u,))
    return new


def initial_partition(specs: Dict[int, UavSpec], view: SwarmView) -> PartitionState:
    """One singleton coalition per UAV, coalition ids following ascending UAV id."""
    p = PartitionState(transceivers={u: s.transceivers for u, s in specs.items()})
    for u in sorted(specs):
        found(p, (u,), view)
    return p


def random_partition(specs: Dict[int, UavSpec], n_groups: int, rng: np.random.Generator,
                     view: SwarmView) -> PartitionState:
    """Assign every UAV to one of n_groups uniformly at random; empty groups are skipped."""
    p = PartitionState(transceivers={u: s.transceivers for u, s in specs.items()})
    groups: Dict[int, list] = {}
    for u in sorted(specs):
        groups.setdefault(int(rng.integers(n_groups)), []).append(u)
    for g in sorted(groups):
        found(p, groups[g], view)
    logger.debug(f"Random start: {len(groups)} coalitions from {len(specs)} UAVs")
    return p
