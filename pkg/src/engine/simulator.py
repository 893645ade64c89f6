"""
The time-stepped simulation loop.

Each step runs six phases in a fixed order: due directives, emergency checks
with their queued merges, one learning iteration, one channel best-response
round, relay matching with traffic accounting, and metrics collection.
"""

import logging
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from pydantic import BaseModel

from coalition.emergency import check_emergency
from coalition.events import EventKind
from coalition.operations import merge
from games.channels import channel_potential, channel_round
from learning.config import LearnerConfig
from learning.convergence import detect_convergence
from learning.orchestrator import learning_iteration
from radio.matching import RelayMatching, relay_matching
from radio.traffic import account_traffic
from scenario.directives import apply_directive
from scenario.models import Scenario
from utils.errors import SimulationError

from .state import WorldState, initialize
from .trace import FinalState, MetricsRecord, Trace

logger = logging.getLogger(__name__)


def _check(state: WorldState, phase: str) -> None:
    try:
        state.partition.validate(state.scenario.channels)
    except SimulationError as e:
        raise SimulationError(f"step {state.step}, after {phase}: {e}") from e
    area = state.scenario.area
    for u in sorted(state.positions):
        if not area.contains(state.positions[u]):
            raise SimulationError(f"step {state.step}, after {phase}: UAV {u} left the area")


def _apply_due_directives(state: WorldState) -> None:
    directives = state.scenario.directives
    while state.directive_cursor < len(directives) and directives[state.directive_cursor].step <= state.step:
        d = directives[state.directive_cursor]
        state.directive_cursor += 1
        if d.step == state.step:
            apply_directive(state.game, d)


def _resolve(remap: Dict[int, int], cid: int) -> int:
    while cid in remap:
        cid = remap[cid]
    return cid


class EmergencyRound(BaseModel):
    """What this step's emergency checks found."""
    triggered: int = 0
    members: FrozenSet[int] = frozenset()


def handle_emergencies(state: WorldState) -> EmergencyRound:
    """
    Check every coalition and execute the merges the checks request.

    A member set's emergency is reported, and its merge requested, the first
    time it is seen; later checks only keep the flag current.

    Returns:
        EmergencyRound with the number of checks that triggered and the UAVs of
        those coalitions, taken before any merge
    """
    p = state.partition
    weights = state.scenario.weights
    theta = state.scenario.emergency_theta
    view = state.view()
    queued: List[Tuple[int, int]] = []
    triggered = 0
    members: Set[int] = set()

    for cid in sorted(p.coalitions):
        key = frozenset(p.coalitions[cid].members)
        fresh = key not in state.emergency_seen
        check = check_emergency(p, cid, theta, view if fresh else view.silent(), weights, request_merge=fresh)
        if check.triggered:
            triggered += 1
            members |= key
        if not (check.triggered and fresh):
            continue
        state.emergency_seen.add(key)
        logger.info(f"Step {state.step}: coalition {cid} in emergency ({check.reason})")
        if check.merge_with is None:
            logger.warning(f"Step {state.step}: no backhaul coalition in range of coalition {cid}")
        else:
            queued.append((cid, check.merge_with))

    remap: Dict[int, int] = {}
    for a, b in queued:
        a, b = _resolve(remap, a), _resolve(remap, b)
        if a == b or a not in p.coalitions or b not in p.coalitions:
            continue
        new = merge(p, a, b, view)
        remap[a] = remap[b] = new
        merged = sorted(p.coalitions[new].members) if new in p.coalitions else []
        view.emit(EventKind.EMERGENCY_MERGE, (a, b, new), merged)

    return EmergencyRound(triggered=triggered, members=frozenset(members))


def relay_assignments(state: WorldState) -> RelayMatching:
    """Match members cut off from their ground leader to relay drones with backhaul."""
    p = state.partition
    specs = state.game.specs
    stranded = set()
    for cid in sorted(p.coalitions):
        c = p.coalitions[cid]
        routes = state.game.evaluator.routes(c, state.positions)
        stranded.update(m for m in c.members if m not in routes)
    relays = {
        u: specs[u].relay_quota for u in sorted(specs)
        if specs[u].relay_quota > 0 and specs[u].ground_link_quality > 0.0 and u not in stranded
    }
    return relay_matching(sorted(stranded), relays, state.positions, specs, state.scenario.weights)


def step(state: WorldState, debug: bool = False) -> MetricsRecord:
    """
    Advance the world by one step.

    Args:
        state: World state, mutated
        debug: Validate partition and positions after every phase

    Returns:
        The step's MetricsRecord (also appended to state.metrics)
    """
    scenario = state.scenario
    if state.step >= scenario.max_steps:
        raise SimulationError(f"step {state.step} is past max_steps {scenario.max_steps}")

    _apply_due_directives(state)
    if debug:
        _check(state, "directives")

    emergencies = handle_emergencies(state)
    if debug:
        _check(state, "emergencies")

    result = learning_iteration(state.game, state.learner, state.rng)
    if debug:
        _check(state, "learning")

    channel_round(state.partition, state.positions, scenario.channels, scenario.weights.channel_eps_m)
    if debug:
        _check(state, "channels")

    matching = relay_assignments(state)
    tally = account_traffic(state.partition, state.positions, state.game.specs, scenario.weights, matching,
                           emergencies.members)

    outcome = state.game.objective()
    record = MetricsRecord(
        step=state.step,
        coverage=outcome.coverage,
        overhead=outcome.overhead,
        objective=outcome.objective,
        n_coalitions=len(state.partition.coalitions),
        safety_msgs=tally.safety,
        fusion_msgs=tally.fusion,
        inter_msgs=tally.inter,
        emergencies=emergencies.triggered,
        accepted_moves=result.accepted,
        relayed=tally.relayed,
    )
    state.metrics.append(record)
    state.history.append(record.objective)
    logger.debug(f"Step {record.step}: objective {record.objective:.6f}, "
                 f"{record.n_coalitions} coalitions, {record.accepted_moves} moves")

    if state.converged_at is None:
        cfg = state.config
        state.converged_at = detect_convergence(state.history, cfg.conv_window, cfg.conv_eps)
        if state.converged_at is not None:
            logger.info(f"Objective settled at iteration {state.converged_at} (step {state.step})")

    state.game.step += 1
    return record


def final_state(state: WorldState) -> FinalState:
    area = state.scenario.area
    return FinalState.capture(
        state.step,
        (area.x_min, area.y_min, area.width, area.height),
        state.partition,
        state.positions,
        state.game.specs,
        channel_potential(state.partition, state.positions, state.scenario.weights.channel_eps_m),
    )


def simulate(scenario: Scenario, learner_config: Optional[LearnerConfig] = None, seed: Optional[int] = None,
             debug: bool = False) -> Tuple[Trace, WorldState]:
    """
    Run until max_steps, or until 2 * conv_window steps past the convergence index.

    Returns:
        (Trace, final WorldState)
    """
    state = initialize(scenario, learner_config, seed)
    window = state.config.conv_window
    logger.info(f"Starting {state.config.algo.value} run: {len(scenario.uavs)} UAVs, "
                f"max {scenario.max_steps} steps, seed {state.seed}")

    while state.step < scenario.max_steps:
        step(state, debug)
        if state.converged_at is not None and state.step >= state.converged_at + 2 * window:
            break

    trace = Trace(
        metrics=list(state.metrics),
        events=list(state.events),
        final=final_state(state),
        history=list(state.history),
        converged_at=state.converged_at,
    )
    logger.info(f"Run complete after {trace.steps} steps, objective {state.history[-1]:.6f}")
    return trace, state


def run(scenario: Scenario, learner_config: Optional[LearnerConfig] = None, seed: Optional[int] = None) -> Trace:
    """Execute a full run; writes nothing to disk."""
    return simulate(scenario, learner_config, seed)[0]
