"""
Ground-controller directives applied to a running game state.

Imported by the engine directly; the scenario package itself stays free of
game-layer imports.
"""

import logging
from typing import Optional

from coalition.errors import CoalitionError
from coalition.events import EventKind, TraceEvent
from coalition.leaders import refresh_leaders
from coalition.operations import merge, split
from games.actions import GameState

from .models import DirectiveKind, TaskDirective

logger = logging.getLogger(__name__)


class DirectiveRejected(Exception):
    """Raised internally when a directive cannot be executed as written."""


def _resolve(state: GameState, d: TaskDirective, key: str) -> int:
    payload = d.payload
    if key in payload:
        cid = int(payload[key])
        if cid not in state.partition.coalitions:
            raise DirectiveRejected(f"no coalition {cid}")
        return cid
    uav = int(payload[f"{key}_of"])
    if uav not in state.partition.primary_of:
        raise DirectiveRejected(f"no UAV {uav}")
    return state.partition.primary_of[uav]


def _refresh_all(state: GameState) -> None:
    view = state.view()
    for cid in sorted(state.partition.coalitions):
        refresh_leaders(state.partition.coalitions[cid], view)


def _execute(state: GameState, d: TaskDirective) -> TraceEvent:
    view = state.view()
    p = state.partition

    if d.kind is DirectiveKind.ADD_FIELD:
        state.fields.append(d.field)
        state.evaluator.set_fields(state.fields)
        _refresh_all(state)
        return view.emit(EventKind.FIELD_ADDED, detail=f"center={list(d.field.center)} sigma_m={d.field.sigma_m}")

    if d.kind is DirectiveKind.REMOVE_FIELD:
        index = int(d.payload["index"])
        if not 0 <= index < len(state.fields):
            raise DirectiveRejected(f"no active field at index {index}")
        removed = state.fields.pop(index)
        state.evaluator.set_fields(state.fields)
        _refresh_all(state)
        return view.emit(EventKind.FIELD_REMOVED, detail=f"index={index} center={list(removed.center)}")

    if d.kind is DirectiveKind.FORCE_SPLIT:
        cid = _resolve(state, d, "coalition")
        subset = set(d.members)
        if not subset < p.coalitions[cid].members:
            raise DirectiveRejected(f"{sorted(subset)} is not a strict subset of coalition {cid}")
        event = view.emit(EventKind.DIRECTIVE, (cid,), sorted(subset), d.kind.value)
        split(p, cid, subset, view)
        return event

    c1 = _resolve(state, d, "coalition")
    c2 = _resolve(state, d, "other")
    if c1 == c2:
        raise DirectiveRejected(f"coalitions {c1} and {c2} are the same")
    event = view.emit(EventKind.DIRECTIVE, (c1, c2), sorted(p.coalitions[c1].members | p.coalitions[c2].members),
                      d.kind.value)
    merge(p, c1, c2, view)
    return event


def apply_directive(state: GameState, d: TaskDirective) -> Optional[TraceEvent]:
    """
    Execute one directive against the game state.

    Args:
        state: Game state; fields, evaluator grid and partition are mutated in place
        d: Directive due at state.step

    Returns:
        The directive's trace event (None when the state emits no events);
        rejections produce a directive_rejected event and leave the state unchanged
    """
    if d.step != state.step:
        raise ValueError(f"directive for step {d.step} applied at step {state.step}")
    try:
        event = _execute(state, d)
    except (DirectiveRejected, CoalitionError) as e:
        logger.warning(f"Step {state.step}: {d.kind.value} directive rejected: {e}")
        return state.view().emit(EventKind.DIRECTIVE_REJECTED, detail=f"{d.kind.value}: {e}")
    logger.info(f"Step {state.step}: applied {d.kind.value} directive")
    return event
