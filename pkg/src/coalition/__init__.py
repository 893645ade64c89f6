"""
Overlapping coalition structure with dual leaders and emergency handling.

Public API: PartitionState, elect_leaders, merge, split, join, leave, check_emergency
"""

from .emergency import EmergencyCheck, check_emergency, nearest_backhaul_coalition
from .errors import (
    AlreadyMember, CoalitionError, InvalidSubset, LastMembership, NoFreeTransceiver, NotAMember,
    PartitionInvariantError, UnknownCoalition
)
from .events import EventKind, TraceEvent
from .leaders import Leaders, elect_leaders, refresh_leaders
from .operations import (
    enforce_transceiver_bound, found, initial_partition, join, leave, merge, random_partition, split,
    switch_primary
)
from .partition import Coalition, PartitionState, SwarmView

__all__ = [
    'AlreadyMember',
    'Coalition',
    'CoalitionError',
    'EmergencyCheck',
    'EventKind',
    'InvalidSubset',
    'LastMembership',
    'Leaders',
    'NoFreeTransceiver',
    'NotAMember',
    'PartitionInvariantError',
    'PartitionState',
    'SwarmView',
    'TraceEvent',
    'UnknownCoalition',
    'check_emergency',
    'elect_leaders',
    'enforce_transceiver_bound',
    'found',
    'initial_partition',
    'join',
    'leave',
    'merge',
    'nearest_backhaul_coalition',
    'random_partition',
    'refresh_leaders',
    'split',
    'switch_primary'
]
