"""
Learner configuration.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Algorithm(str, Enum):
    BEST_RESPONSE = "best-response"
    LOG_LINEAR = "log-linear"
    Q_LEARNING = "q-learning"


ALGORITHM_NAMES = [a.value for a in Algorithm]


class LearnerConfig(BaseModel):
    """Dynamics, annealing and convergence settings of one learning run."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    algo: Algorithm = Algorithm.BEST_RESPONSE
    temperature0: float = Field(0.5, gt=0)
    anneal_rate: float = Field(0.98, gt=0, le=1)
    epsilon0: float = Field(0.3, ge=0, le=1)
    epsilon_decay: float = Field(0.995, gt=0, le=1)
    alpha: float = Field(0.3, gt=0, le=1)
    gamma: float = Field(0.9, ge=0, lt=1)
    conv_window: int = Field(10, ge=1)
    conv_eps: float = Field(1e-3, ge=0)
