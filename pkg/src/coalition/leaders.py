"""
Dual-leader election.

The ground-connecting leader holds the best backhaul; the task-guiding leader
sits where the mission matters most. Both may be the same drone.
"""

from typing import Dict, Iterable, List, NamedTuple

from scenario.importance import importance_at
from scenario.models import ImportanceField, Point, UavSpec

from .partition import Coalition, SwarmView


class Leaders(NamedTuple):
    ground: int
    task: int
    no_backhaul: bool


def elect_leaders(
    members: Iterable[int],
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    fields: List[ImportanceField]
) -> Leaders:
    """
    Elect both leaders of a member set.

    Args:
        members: Non-empty member ids
        positions: Current positions
        specs: UAV specs (ground_link_quality)
        fields: Active importance fields

    Returns:
        Leaders; ties go to the lowest id, and no_backhaul is set when every
        member has ground_link_quality 0
    """
    ordered = sorted(members)
    if not ordered:
        raise ValueError("cannot elect leaders of an empty coalition")
    ground = max(ordered, key=lambda u: (specs[u].ground_link_quality, -u))
    task = max(ordered, key=lambda u: (importance_at(fields, positions[u]), -u))
    return Leaders(ground, task, specs[ground].ground_link_quality <= 0.0)


def refresh_leaders(c: Coalition, view: SwarmView) -> Coalition:
    """Re-elect in place; losing all backhaul raises the emergency flag, only check_emergency clears it."""
    leaders = elect_leaders(c.members, view.positions, view.specs, view.fields)
    c.ground_leader, c.task_leader = leaders.ground, leaders.task
    c.emergency = c.emergency or leaders.no_backhaul
    return c
