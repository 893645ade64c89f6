"""
Trace events emitted by coalition restructuring, directives and emergencies.
"""

from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict


class EventKind(str, Enum):
    MERGE = "merge"
    SPLIT = "split"
    JOIN = "join"
    LEAVE = "leave"
    SWITCH = "switch"
    FOUND = "found"
    DISSOLVE = "dissolve"
    EMERGENCY = "emergency"
    EMERGENCY_MERGE = "emergency_merge"
    DIRECTIVE = "directive"
    DIRECTIVE_REJECTED = "directive_rejected"
    FIELD_ADDED = "field_added"
    FIELD_REMOVED = "field_removed"


class TraceEvent(BaseModel):
    """One row of the events file."""
    model_config = ConfigDict(frozen=True)

    step: int
    kind: EventKind
    coalitions: Tuple[int, ...] = ()
    uavs: Tuple[int, ...] = ()
    detail: str = ""
