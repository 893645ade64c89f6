"""
Shared logging configuration for the simulator.

Provides a consistent logging setup across the CLI and scripts.
"""

import logging
from typing import Union

from .config import LOG_LEVEL


def setup_logging(level: Union[int, str, None] = None) -> None:
    """
    Configure logging with consistent format.

    Diagnostics go to stderr so stdout and output directories stay machine-readable.

    Args:
        level: Logging level (default: UAVSIM_LOG_LEVEL, else INFO)
    """
    if level is None:
        level = LOG_LEVEL
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True
    )
