"""
Multi-agent learning dynamics: best response, log-linear learning, Q-learning.

Public API: LearnerConfig, schedule_agents, learning_iteration, detect_convergence, run_comparison
"""

from .comparison import COMPARISON_COLUMNS, HISTORY_COLUMNS, SUMMARY_COLUMNS, ComparisonResult, run_comparison, summarize
from .config import ALGORITHM_NAMES, Algorithm, LearnerConfig
from .convergence import detect_convergence
from .orchestrator import IterationResult, LearnerState, LearningOrchestrator, learning_iteration, schedule_agents
from .qtable import QTable, state_key

__all__ = [
    'ALGORITHM_NAMES',
    'COMPARISON_COLUMNS',
    'HISTORY_COLUMNS',
    'SUMMARY_COLUMNS',
    'Algorithm',
    'ComparisonResult',
    'IterationResult',
    'LearnerConfig',
    'LearnerState',
    'LearningOrchestrator',
    'QTable',
    'detect_convergence',
    'learning_iteration',
    'run_comparison',
    'schedule_agents',
    'state_key',
    'summarize'
]
