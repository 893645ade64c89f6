"""
Switch rules of the coalition formation game.

An agent's utility for an action is its marginal contribution: the change in the
global objective the action causes. Unilateral improvements therefore raise the
potential, and best-response dynamics terminate.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Union

import numpy as np

from .actions import STAY, GameAction, GameState, apply_action, candidate_actions
from .objective import ObjectiveBreakdown

logger = logging.getLogger(__name__)

# utilities at or below this count as no improvement
IMPROVEMENT_TOL = 1e-12


@dataclass(frozen=True)
class BestResponse:
    pass


@dataclass(frozen=True)
class LogLinear:
    temperature: float


SwitchRule = Union[BestResponse, LogLinear]


class Candidate(NamedTuple):
    action: GameAction
    utility: float
    after: ObjectiveBreakdown


class SwitchOutcome(NamedTuple):
    accepted: bool
    action: GameAction
    utility: float
    objective: ObjectiveBreakdown


def outcome_of(agent: int, action: GameAction, state: GameState) -> ObjectiveBreakdown:
    """Objective of the state the action would produce; state is untouched."""
    if action == STAY:
        return state.objective()
    trial = state.hypothetical()
    apply_action(agent, action, trial)
    return trial.objective()


def marginal_utility(agent: int, action: GameAction, state: GameState,
                     before: Optional[ObjectiveBreakdown] = None) -> float:
    """
    Global objective after the action minus the global objective now.

    Args:
        agent: Acting UAV
        action: One of the agent's candidate actions
        state: Current game state (not modified)
        before: Current objective, when already known

    Returns:
        Utility; exactly 0.0 for Stay
    """
    if action == STAY:
        return 0.0
    before = before or state.objective()
    return outcome_of(agent, action, state).objective - before.objective


def evaluate_candidates(agent: int, state: GameState) -> List[Candidate]:
    before = state.objective()
    candidates = []
    for action in candidate_actions(agent, state):
        after = before if action == STAY else outcome_of(agent, action, state)
        utility = 0.0 if action == STAY else after.objective - before.objective
        candidates.append(Candidate(action, utility, after))
    return candidates


def boltzmann_probabilities(utilities: List[float], temperature: float) -> np.ndarray:
    """Probabilities proportional to exp(u / T), computed stably."""
    u = np.asarray(utilities, dtype=float)
    z = np.exp((u - u.max()) / temperature)
    return z / z.sum()


def switch_step(agent: int, state: GameState, rule: SwitchRule,
                rng: Optional[np.random.Generator] = None) -> SwitchOutcome:
    """
    Let one agent revise its action under the given rule.

    BestResponse applies the highest-utility action if it strictly improves
    (ties: lowest ordinal). LogLinear samples an action with Boltzmann
    probabilities at the rule's temperature and applies it.

    Args:
        agent: Acting UAV
        state: Game state, mutated when an action is applied
        rule: BestResponse() or LogLinear(temperature)
        rng: Required for LogLinear

    Returns:
        SwitchOutcome with the post-decision objective
    """
    candidates = evaluate_candidates(agent, state)
    if isinstance(rule, LogLinear):
        if rng is None:
            raise ValueError("log-linear sampling needs an rng")
        probs = boltzmann_probabilities([c.utility for c in candidates], rule.temperature)
        chosen = candidates[int(rng.choice(len(candidates), p=probs))]
    else:
        chosen = candidates[0]
        for c in candidates[1:]:
            if c.utility > chosen.utility:
                chosen = c
        if chosen.utility <= IMPROVEMENT_TOL:
            chosen = candidates[0]

    if chosen.action == STAY:
        return SwitchOutcome(False, STAY, 0.0, candidates[0].after)
    apply_action(agent, chosen.action, state)
    logger.debug(f"UAV {agent}: {chosen.action} (utility {chosen.utility:+.6f})")
    return SwitchOutcome(True, chosen.action, chosen.utility, chosen.after)


def improving_actions(agent: int, state: GameState) -> List[Candidate]:
    return [c for c in evaluate_candidates(agent, state) if c.utility > IMPROVEMENT_TOL]


def is_switch_stable(state: GameState) -> bool:
    """No agent has a strictly improving candidate action."""
    return not any(improving_actions(agent, state) for agent in sorted(state.positions))
