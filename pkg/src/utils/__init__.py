"""
Utility modules for the UAV coalition simulator.

Provides shared configuration, logging, and the base error type.
"""

from .config import ARTIFACT_VERSION, BUNDLED_SCENARIO_DIR, DEFAULT_SCENARIO, LOG_LEVEL, SCENARIO_DIR
from .errors import SimulationError
from .logging_config import setup_logging

__all__ = [
    'ARTIFACT_VERSION',
    'BUNDLED_SCENARIO_DIR',
    'DEFAULT_SCENARIO',
    'LOG_LEVEL',
    'SCENARIO_DIR',
    'SimulationError',
    'setup_logging'
]
