"""
Fault-Tolerance Model

This module maps a surface-code distance d to the logical error rate and
duration of one two-qubit logical gate, and to the physical-qubit footprint.

Per-cycle logical error: ε_L(d) = 10^{-(d+3)/2}. A logical gate lasts
100·d cycles, so r̄_g(d) = 1 - (1 - ε_L)^{100d} and T̃_g = 100·d·t_cycle.
Each logical qubit uses 2d² physical qubits.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError, InfeasibleRequestError

logger = logging.getLogger(__name__)

MIN_DISTANCE = 3


class SurfaceCodeParams(BaseModel):
    """Surface-code hardware parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    cycle_time: float = Field(default_factory=lambda: get_settings().cycle_time, gt=0)
    cycles_per_gate_per_distance: float = Field(
        default_factory=lambda: get_settings().cycles_per_gate_per_distance, gt=0
    )
    physical_gate_error: float = Field(default_factory=lambda: get_settings().physical_gate_error, gt=0, lt=1)
    max_distance: int = Field(default_factory=lambda: get_settings().max_distance, ge=MIN_DISTANCE)


@dataclass(frozen=True)
class CodePoint:
    """Logical gate characteristics at one code distance."""

    distance: int
    cycle_error: float
    logical_gate_error: float
    logical_gate_time: float
    physical_qubits_per_logical: int


def logical_cycle_error(distance: int) -> float:
    """Logical error per code cycle, 10^{-(d+3)/2}."""
    return 10.0 ** (-(distance + 3) / 2.0)


def approximate_gate_error(distance: int) -> float:
    """First-order gate error d·10^{-(d-1)/2} (reference only; costing uses the exact form)."""
    return distance * 10.0 ** (-(distance - 1) / 2.0)


def physical_qubits(n_logical: int, distance: int) -> int:
    """Physical qubits for ``n_logical`` logical qubits at distance d (2d² each)."""
    if n_logical < 0:
        raise ConfigurationError(f"Logical qubit count must be non-negative, got {n_logical}")
    return 2 * distance ** 2 * n_logical


def code_point(distance: int, params: Optional[SurfaceCodeParams] = None) -> CodePoint:
    """
    Logical gate error and time at code distance ``distance``.

    Args:
        distance: Code distance d ≥ 3
        params: Surface-code parameters (defaults from settings)

    Returns:
        CodePoint
    """
    params = params or SurfaceCodeParams()
    if distance < MIN_DISTANCE:
        raise ConfigurationError(f"Code distance must be at least {MIN_DISTANCE}, got {distance}")

    cycle_error = logical_cycle_error(distance)
    cycles = params.cycles_per_gate_per_distance * distance
    gate_error = -math.expm1(cycles * math.log1p(-cycle_error))

    return CodePoint(
        distance=distance,
        cycle_error=cycle_error,
        logical_gate_error=gate_error,
        logical_gate_time=cycles * params.cycle_time,
        physical_qubits_per_logical=physical_qubits(1, distance),
    )


def distance_for_error(target_gate_error: float, params: Optional[SurfaceCodeParams] = None) -> CodePoint:
    """
    Code point of the smallest distance whose logical gate error does not
    exceed the target.

    Raises InfeasibleRequestError if no distance up to the cap qualifies.
    """
    params = params or SurfaceCodeParams()
    if not 0.0 < target_gate_error < 1.0:
        raise ConfigurationError(f"Target gate error must be in (0, 1), got {target_gate_error}")

    for distance in range(MIN_DISTANCE, params.max_distance + 1):
        point = code_point(distance, params)
        if point.logical_gate_error <= target_gate_error:
            return point

    raise InfeasibleRequestError(
        f"No code distance up to {params.max_distance} reaches gate error {target_gate_error:.3e}"
    )
