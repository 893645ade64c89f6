"""
Multi-agent learning orchestrator.

Manages asynchronous revisions: every iteration each agent acts once, in a
freshly shuffled order.
"""

import logging
from dataclasses import dataclass, field
from typing import Generator, List, NamedTuple, Optional

import numpy as np

from games.actions import STAY, GameState, apply_action, candidate_actions
from games.objective import ObjectiveBreakdown
from games.switching import BestResponse, LogLinear, marginal_utility, switch_step

from .config import Algorithm, LearnerConfig
from .convergence import detect_convergence
from .qtable import QTable, state_key

logger = logging.getLogger(__name__)


@dataclass
class LearnerState:
    """Annealed parameters and Q-table carried across iterations."""
    config: LearnerConfig
    temperature: float
    epsilon: float
    qtable: QTable = field(default_factory=QTable)
    iteration: int = 0

    @classmethod
    def from_config(cls, config: LearnerConfig) -> "LearnerState":
        return cls(config, config.temperature0, config.epsilon0)


class IterationResult(NamedTuple):
    objective: ObjectiveBreakdown
    accepted: int


def schedule_agents(n_agents: int, iteration: int, rng: np.random.Generator) -> List[int]:
    """
    Activation order for one iteration.

    Args:
        n_agents: Number of agents (>= 1)
        iteration: Iteration index (the rng stream alone fixes the order)
        rng: Seeded generator

    Returns:
        Uniformly random permutation of range(n_agents)
    """
    if n_agents < 1:
        raise ValueError("need at least one agent")
    return [int(i) for i in rng.permutation(n_agents)]


def _q_learning_turn(agent: int, state: GameState, learner: LearnerState, rng: np.random.Generator) -> bool:
    cfg = learner.config
    s = state_key(agent, state)
    actions = candidate_actions(agent, state)
    if rng.random() < learner.epsilon:
        idx = int(rng.integers(len(actions)))
    else:
        idx = learner.qtable.greedy(agent, s, actions)
    action = actions[idx]
    reward = marginal_utility(agent, action, state)
    apply_action(agent, action, state)
    learner.qtable.update(agent, s, action, reward, state_key(agent, state),
                          candidate_actions(agent, state), cfg.alpha, cfg.gamma)
    return action != STAY


def learning_iteration(state: GameState, learner: LearnerState, rng: np.random.Generator) -> IterationResult:
    """
    One revision per agent under the configured algorithm, then annealing.

    Args:
        state: Game state, mutated
        learner: Annealing and Q-learning state, mutated
        rng: Run's generator

    Returns:
        IterationResult with the post-iteration objective and accepted-move count
    """
    agents = sorted(state.positions)
    order = schedule_agents(len(agents), learner.iteration, rng)
    algo = learner.config.algo
    accepted = 0
    for idx in order:
        agent = agents[idx]
        if algo is Algorithm.Q_LEARNING:
            accepted += _q_learning_turn(agent, state, learner, rng)
        else:
            rule = BestResponse() if algo is Algorithm.BEST_RESPONSE else LogLinear(learner.temperature)
            accepted += switch_step(agent, state, rule, rng).accepted

    learner.temperature *= learner.config.anneal_rate
    learner.epsilon *= learner.config.epsilon_decay
    learner.iteration += 1
    return IterationResult(state.objective(), accepted)


class LearningOrchestrator:
    """
    Runs learning iterations on a game state until the objective settles.

    Used standalone for oracle experiments; the engine drives learning_iteration
    itself inside its step phases.
    """

    def __init__(self, state: GameState, config: LearnerConfig, rng: np.random.Generator,
                 max_iterations: int = 200) -> None:
        """
        Initialize orchestrator.

        Args:
            state: Game state to evolve
            config: Learner settings
            rng: Seeded generator
            max_iterations: Hard iteration cap
        """
        self.state = state
        self.learner = LearnerState.from_config(config)
        self.rng = rng
        self.max_iterations = max_iterations
        self.history: List[float] = [state.objective().objective]
        self.converged_at: Optional[int] = None

    def _should_terminate(self, result: IterationResult) -> bool:
        cfg = self.learner.config
        if cfg.algo is Algorithm.BEST_RESPONSE:
            # only a quiet best-response round certifies switch stability
            if result.accepted == 0:
                self.converged_at = len(self.history) - 1
        elif self.converged_at is None:
            self.converged_at = detect_convergence(self.history, cfg.conv_window, cfg.conv_eps)
        return self.converged_at is not None

    def run_streaming(self) -> Generator[IterationResult, None, None]:
        """
        Generator that yields each iteration's result as it completes.

        Yields:
            IterationResult per iteration
        """
        logger.info(f"Starting {self.learner.config.algo.value} learning with {len(self.state.positions)} agents")
        for _ in range(self.max_iterations):
            result = learning_iteration(self.state, self.learner, self.rng)
            self.history.append(result.objective.objective)
            yield result
            if self._should_terminate(result):
                logger.info(f"Objective settled at iteration {self.converged_at}")
                break
        logger.info(f"Learning complete after {self.learner.iteration} iterations")

    def run(self) -> List[float]:
        """Run to convergence (or the cap) and return the objective history."""
        for _ in self.run_streaming():
            pass
        return self.history
