"""
Overlapping coalition structure.

A UAV belongs to at least one and at most `transceivers` coalitions; one of them
is its primary ("home") coalition.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from scenario.models import ImportanceField, Point, UavSpec

from .errors import PartitionInvariantError, UnknownCoalition
from .events import EventKind, TraceEvent


@dataclass
class Coalition:
    id: int
    members: Set[int]
    ground_leader: int
    task_leader: int
    channel: int = 0
    emergency: bool = False

    def copy(self) -> "Coalition":
        return Coalition(self.id, set(self.members), self.ground_leader, self.task_leader,
                         self.channel, self.emergency)


@dataclass
class SwarmView:
    """
    What coalition operations need to know about the world.

    Positions are shared by reference with the owner; events is None for
    hypothetical evaluations that must stay silent.
    """
    specs: Dict[int, UavSpec]
    positions: Dict[int, Point]
    fields: List[ImportanceField]
    step: int = 0
    events: Optional[List[TraceEvent]] = None

    def emit(self, kind: EventKind, coalitions: Iterable[int] = (), uavs: Iterable[int] = (),
             detail: str = "") -> Optional[TraceEvent]:
        if self.events is None:
            return None
        event = TraceEvent(step=self.step, kind=kind, coalitions=tuple(coalitions),
                           uavs=tuple(uavs), detail=detail)
        self.events.append(event)
        return event

    def silent(self, positions: Optional[Dict[int, Point]] = None) -> "SwarmView":
        return SwarmView(self.specs, self.positions if positions is None else positions,
                         self.fields, self.step, None)


@dataclass
class PartitionState:
    transceivers: Dict[int, int]
    coalitions: Dict[int, Coalition] = field(default_factory=dict)
    membership: Dict[int, Set[int]] = field(default_factory=dict)
    primary_of: Dict[int, int] = field(default_factory=dict)
    next_id: int = 0

    def copy(self) -> "PartitionState":
        return PartitionState(
            transceivers=self.transceivers,
            coalitions={cid: c.copy() for cid, c in self.coalitions.items()},
            membership={u: set(cs) for u, cs in self.membership.items()},
            primary_of=dict(self.primary_of),
            next_id=self.next_id,
        )

    def coalition(self, cid: int) -> Coalition:
        try:
            return self.coalitions[cid]
        except KeyError:
            raise UnknownCoalition(f"no coalition {cid}") from None

    def new_id(self) -> int:
        cid = self.next_id
        self.next_id += 1
        return cid

    def free_slots(self, u: int) -> int:
        return self.transceivers[u] - len(self.membership[u])

    def secondaries(self, u: int) -> List[int]:
        return sorted(self.membership[u] - {self.primary_of[u]})

    def member_sets(self) -> List[Tuple[int, ...]]:
        """Membership sets, id-free, for comparing structures."""
        return sorted(tuple(sorted(c.members)) for c in self.coalitions.values())

    def validate(self, channels: Optional[int] = None) -> None:
        """
        Check every structural invariant.

        Raises:
            PartitionInvariantError: Naming the first violation found
        """
        for cid, c in self.coalitions.items():
            if c.id != cid:
                raise PartitionInvariantError(f"coalition keyed {cid} has id {c.id}")
            if not c.members:
                raise PartitionInvariantError(f"coalition {cid} is empty")
            if c.ground_leader not in c.members or c.task_leader not in c.members:
                raise PartitionInvariantError(f"coalition {cid} has a leader outside its members")
            if channels is not None and not 0 <= c.channel < channels:
                raise PartitionInvariantError(f"coalition {cid} uses channel {c.channel}")
            for u in c.members:
                if cid not in self.membership.get(u, set()):
                    raise PartitionInvariantError(f"UAV {u} missing membership in {cid}")
        for u, cs in self.membership.items():
            if not cs:
                raise PartitionInvariantError(f"UAV {u} belongs to no coalition")
            if len(cs) > self.transceivers[u]:
                raise PartitionInvariantError(f"UAV {u} exceeds its {self.transceivers[u]} transceivers")
            if self.primary_of.get(u) not in cs:
                raise PartitionInvariantError(f"UAV {u} primary is not among its coalitions")
            for cid in cs:
                if cid not in self.coalitions or u not in self.coalitions[cid].members:
                    raise PartitionInvariantError(f"UAV {u} lists coalition {cid} that lacks it")
        if set(self.membership) != set(self.transceivers):
            raise PartitionInvariantError("membership does not cover the roster")
        if self.coalitions and max(self.coalitions) >= self.next_id:
            raise PartitionInvariantError("coalition id counter is behind")
