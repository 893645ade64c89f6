"""
Coalition structure errors.
"""

from utils.errors import SimulationError


class CoalitionError(SimulationError):
    """Base class for rejected partition operations."""


class UnknownCoalition(CoalitionError):
    """The named coalition does not exist (or the operation named it twice)."""


class InvalidSubset(CoalitionError):
    """A split subset is empty, not contained in the coalition, or the whole coalition."""


class NoFreeTransceiver(CoalitionError):
    """The UAV already uses all of its transceivers."""


class LastMembership(CoalitionError):
    """Leaving would leave the UAV without any coalition."""


class AlreadyMember(CoalitionError):
    """The UAV is already in the coalition it tried to join."""


class NotAMember(CoalitionError):
    """The UAV is not in the coalition it tried to leave."""


class PartitionInvariantError(CoalitionError):
    """validate() found an inconsistent partition."""
