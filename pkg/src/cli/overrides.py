"""
--set key=value overrides for scenario documents and learner settings.
"""

import json
from typing import Any, Dict, List, Sequence, Tuple

LEARNER_PREFIX = "learner."


class OverrideError(ValueError):
    """A --set argument is not of the form dotted.key=value or names no valid path."""


def parse_value(text: str) -> Any:
    """JSON literal when it parses as one (numbers, booleans, lists), else the raw string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_assignment(item: str) -> Tuple[List[str], Any]:
    key, sep, value = item.partition("=")
    key = key.strip()
    if not sep or not key:
        raise OverrideError(f"expected key=value, got {item!r}")
    return key.split("."), parse_value(value.strip())


def _set_path(doc: Any, path: List[str], value: Any, full: str) -> None:
    node = doc
    for i, part in enumerate(path):
        last = i == len(path) - 1
        if isinstance(node, list):
            try:
                index = int(part)
                node[index]
            except (ValueError, IndexError):
                raise OverrideError(f"{full}: {part!r} is not an index of a {len(node)}-element list") from None
            if last:
                node[index] = value
            else:
                node = node[index]
        elif isinstance(node, dict):
            if last:
                node[part] = value
            else:
                node = node.setdefault(part, {})
        else:
            raise OverrideError(f"{full}: cannot descend into {type(node).__name__} at {part!r}")


def split_overrides(items: Sequence[str]) -> Tuple[Dict[str, Any], List[Tuple[List[str], Any, str]]]:
    """
    Separate learner keys from scenario paths.

    Returns:
        (learner field -> value, [(scenario path, value, original text)])
    """
    learner: Dict[str, Any] = {}
    scenario = []
    for item in items:
        path, value = parse_assignment(item)
        if item.startswith(LEARNER_PREFIX):
            if len(path) != 2:
                raise OverrideError(f"{item}: learner keys are not nested")
            learner[path[1]] = value
        else:
            scenario.append((path, value, item))
    return learner, scenario


def apply_scenario_overrides(doc: Dict[str, Any], overrides: Sequence[Tuple[List[str], Any, str]]) -> Dict[str, Any]:
    """Apply dotted-path assignments to a decoded scenario document in place."""
    for path, value, text in overrides:
        _set_path(doc, path, value, text)
    return doc
