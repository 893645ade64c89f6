"""
Base exception for the simulator's domain errors.
"""


class SimulationError(RuntimeError):
    """Root of every error raised by the simulator packages."""
