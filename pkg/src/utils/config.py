"""
Shared configuration for the UAV coalition simulator.

Centralized environment variable access to avoid duplication across modules.
"""

import os
from pathlib import Path

# Scenario lookup
BUNDLED_SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenario" / "data"
DEFAULT_SCENARIO = "fire.scn"
SCENARIO_DIR = os.getenv("UAVSIM_SCENARIO_DIR", "")

# Logging
LOG_LEVEL = os.getenv("UAVSIM_LOG_LEVEL", "INFO").upper()

# Written into every run manifest
ARTIFACT_VERSION = "0.1.0"
