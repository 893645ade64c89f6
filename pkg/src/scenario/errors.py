"""
Scenario loading errors.
"""

from utils.errors import SimulationError


class ScenarioError(SimulationError):
    """Base class for scenario file problems."""


class ParseError(ScenarioError):
    """The file is missing or is not well-formed."""


class ValidationError(ScenarioError):
    """The file parsed but violates a scenario invariant."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
        self.message = message
