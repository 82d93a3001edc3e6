"""
Core Module

This module provides toolkit settings, logging configuration, the exception
hierarchy and atomic output helpers.
"""

from .config import Settings, get_settings, load_settings, read_config_file, use_settings
from .exceptions import (
    ComputationError,
    ConfigurationError,
    FitConvergenceError,
    HamiltonianFormatError,
    InfeasibleRequestError,
    RaeToolkitError,
)
from .logging_config import configure_logging

__all__ = [
    "Settings",
    "get_settings",
    "load_settings",
    "read_config_file",
    "use_settings",
    "configure_logging",
    "RaeToolkitError",
    "ConfigurationError",
    "HamiltonianFormatError",
    "InfeasibleRequestError",
    "ComputationError",
    "FitConvergenceError",
]
