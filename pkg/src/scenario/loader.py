"""
Scenario file loading and writing.

Scenario files are JSON documents following documentation/SCENARIO_SCHEMA.md.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import pydantic

from utils.config import BUNDLED_SCENARIO_DIR, SCENARIO_DIR

from .errors import ParseError, ValidationError
from .models import Scenario

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def resolve_scenario_path(path: PathLike) -> Path:
    """Find a scenario file as given, then in UAVSIM_SCENARIO_DIR, then among the bundled ones.

    Args:
        path: File path or bare file name

    Returns:
        Existing path

    Raises:
        ParseError: If no candidate exists
    """
    candidate = Path(path)
    if candidate.is_file():
        return candidate
    search = [Path(SCENARIO_DIR)] if SCENARIO_DIR else []
    search.append(BUNDLED_SCENARIO_DIR)
    for directory in search:
        if (directory / candidate).is_file():
            return directory / candidate
    raise ParseError(f"scenario file not found: {path}")


def scenario_from_dict(data: Dict[str, Any]) -> Scenario:
    """Validate a decoded scenario document.

    Raises:
        ValidationError: On the first violated invariant, naming the field path
    """
    try:
        return Scenario.model_validate(data)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise ValidationError(field, first["msg"]) from e


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed scenario JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ParseError("scenario document must be a JSON object")
    return scenario_from_dict(data)


def read_scenario_dict(path: PathLike) -> Dict[str, Any]:
    """Read a scenario file into a plain dict without validating it."""
    resolved = resolve_scenario_path(path)
    try:
        data = json.loads(resolved.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{resolved}: malformed JSON at line {e.lineno}: {e.msg}") from e
    except OSError as e:
        raise ParseError(f"{resolved}: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{resolved}: scenario document must be a JSON object")
    return data


def load_scenario(path: PathLike) -> Scenario:
    """
    Load and fully validate a scenario file.

    Args:
        path: Scenario file path or the name of a bundled scenario

    Returns:
        Validated Scenario

    Raises:
        ParseError: Missing or malformed file
        ValidationError: Invariant violated
    """
    scenario = scenario_from_dict(read_scenario_dict(path))
    logger.info(f"Loaded scenario {path}: {len(scenario.uavs)} UAVs, grid {scenario.grid_shape}")
    return scenario


def scenario_to_json(scenario: Scenario) -> str:
    """Render a scenario in the reference JSON format."""
    return json.dumps(scenario.model_dump(mode="json"), indent=2) + "\n"


def write_scenario(scenario: Scenario, path: PathLike) -> Path:
    """Write a scenario so that load_scenario returns an equal object."""
    target = Path(path)
    target.write_text(scenario_to_json(scenario), encoding="utf-8")
    return target


def scenario_hash(scenario: Scenario) -> str:
    """SHA-256 of the canonical (sorted, compact) JSON rendering."""
    canonical = json.dumps(scenario.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
