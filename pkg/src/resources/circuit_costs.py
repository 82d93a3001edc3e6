"""
Circuit Cost Model

This module maps a qubit count and hardware connectivity to the depths of
the hardware-efficient ansatz A and the phase-flip (reflection) operator R,
and from those to the per-layer decay rate and layer time of RAE.

| Connectivity | ansatz depth D_A | phase-flip depth D_R |
|--------------|------------------|----------------------|
| 2D grid      | N                | 192 (N-3)(N-1)       |
| all-to-all   | N/2              | 32 N - 96            |

Effective two-qubit gate counts are depth · N/2. One RAE layer is A†RA
preceded by a reflection, i.e. 2·D_A + D_R in depth.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

from src.core.exceptions import ConfigurationError
from src.estimation.likelihood import NoiseModel

logger = logging.getLogger(__name__)


class Connectivity(str, Enum):
    """Hardware qubit connectivity."""

    TWO_DIMENSIONAL = "2d"
    ALL_TO_ALL = "a2a"


@dataclass(frozen=True)
class CircuitCosts:
    """Depths and effective gate counts for one (N, connectivity) pair."""

    num_qubits: int
    connectivity: Connectivity
    ansatz_depth: int
    phaseflip_depth: int

    @property
    def ansatz_gates(self) -> int:
        return self.ansatz_depth * self.num_qubits // 2

    @property
    def phaseflip_gates(self) -> int:
        return self.phaseflip_depth * self.num_qubits // 2

    @property
    def layer_depth(self) -> int:
        """Depth of one RAE layer, 2·D_A + D_R."""
        return 2 * self.ansatz_depth + self.phaseflip_depth

    @property
    def layer_gates(self) -> int:
        """Effective two-qubit gates in one RAE layer."""
        return self.layer_depth * self.num_qubits // 2


def circuit_costs(num_qubits: int, connectivity: Connectivity) -> CircuitCosts:
    """
    Ansatz and phase-flip costs for ``num_qubits`` qubits.

    Args:
        num_qubits: Qubit count N (even, at least 4)
        connectivity: Hardware connectivity

    Returns:
        CircuitCosts
    """
    if num_qubits < 4 or num_qubits % 2 != 0:
        raise ConfigurationError(f"Qubit count must be even and at least 4, got {num_qubits}")
    connectivity = Connectivity(connectivity)

    if connectivity is Connectivity.TWO_DIMENSIONAL:
        ansatz_depth = num_qubits
        phaseflip_depth = 192 * (num_qubits - 3) * (num_qubits - 1)
    else:
        ansatz_depth = num_qubits // 2
        phaseflip_depth = 32 * num_qubits - 96

    return CircuitCosts(
        num_qubits=num_qubits,
        connectivity=connectivity,
        ansatz_depth=ansatz_depth,
        phaseflip_depth=phaseflip_depth,
    )


def layer_decay(costs: CircuitCosts, logical_gate_error: float, p_bar: float = 1.0) -> NoiseModel:
    """
    Noise model of one RAE layer built from gates of error ``logical_gate_error``.

    λ = -(effective gates per layer) · ln(1 - r̄_g).
    """
    if not 0.0 <= logical_gate_error < 1.0:
        raise ConfigurationError(f"Gate error must be in [0, 1), got {logical_gate_error}")
    lam = -costs.layer_gates * math.log1p(-logical_gate_error)
    return NoiseModel(lam=lam, p_bar=p_bar)


def layer_time(costs: CircuitCosts, logical_gate_time: float) -> float:
    """Wall-clock time of one RAE layer, (2·D_A + D_R) · T̃_g."""
    if not logical_gate_time > 0:
        raise ConfigurationError(f"Gate time must be positive, got {logical_gate_time}")
    return costs.layer_depth * logical_gate_time
