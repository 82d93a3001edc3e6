"""
raeperf - Exception Hierarchy

Library code raises these; the command-line entry point maps them to exit
codes (1 for configuration problems, 2 for computational failures).
"""

from typing import Optional


class RaeToolkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class ConfigurationError(RaeToolkitError):
    """Invalid input, configuration or command-line usage."""

    exit_code = 1


class HamiltonianFormatError(ConfigurationError):
    """Malformed Hamiltonian document."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class InfeasibleRequestError(ConfigurationError):
    """A well-formed request that cannot be satisfied (e.g. too many terms)."""


class ComputationError(RaeToolkitError):
    """Numerical failure during a computation."""

    exit_code = 2


class FitConvergenceError(ComputationError):
    """Power-law fit failed to converge."""
