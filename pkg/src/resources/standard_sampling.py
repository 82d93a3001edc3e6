"""
Standard Sampling Model

This module estimates the runtime of energy estimation by standard
sampling (the VQE baseline): each shot prepares the ansatz once and measures
one Pauli term. With optimal shot allocation the total shot count is
M = K/ε̄², K = (Σ|μ_i|)², each shot costs C = D_A·T̃_g, and probabilistic
error cancellation inflates the total by (1 - r̄_g)^{-D_A·N}.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import ConfigurationError, InfeasibleRequestError
from src.hamiltonians.pauli_hamiltonian import PauliHamiltonian, one_norm
from src.resources.circuit_costs import CircuitCosts
from src.resources.fault_tolerance import CodePoint

logger = logging.getLogger(__name__)

LOG_FLOAT_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class StandardSamplingEstimate:
    """Runtime breakdown of a standard-sampling energy estimate."""

    runtime_constant: float
    shots: float
    mitigation_overhead: float
    shot_time: float
    target_rmse: float

    @property
    def total_runtime(self) -> float:
        return self.shots * self.shot_time * self.mitigation_overhead


def runtime_constant_K(hamiltonian: PauliHamiltonian) -> float:
    """K = (Σ_{non-identity} |μ_i|)²."""
    return one_norm(hamiltonian, include_identity=False) ** 2


def mitigation_overhead(costs: CircuitCosts, logical_gate_error: float) -> float:
    """Error-cancellation sampling overhead (1 - r̄_g)^{-D_A·N}."""
    if not 0.0 <= logical_gate_error < 1.0:
        raise ConfigurationError(f"Gate error must be in [0, 1), got {logical_gate_error}")
    log_overhead = -costs.ansatz_depth * costs.num_qubits * math.log1p(-logical_gate_error)
    # beyond the float range the baseline is unusable, not an error
    if log_overhead > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_overhead)


def standard_runtime_from_K(
    runtime_constant: float, target_rmse: float, costs: CircuitCosts, code: CodePoint
) -> StandardSamplingEstimate:
    """
    Standard-sampling runtime for a given (possibly extrapolated) K.

    Args:
        runtime_constant: K
        target_rmse: Target energy RMSE ε̄
        costs: Circuit costs at the qubit count of interest
        code: Code point supplying r̄_g and T̃_g

    Returns:
        StandardSamplingEstimate
    """
    if not target_rmse > 0:
        raise ConfigurationError(f"Target RMSE must be positive, got {target_rmse}")
    if not runtime_constant > 0:
        raise InfeasibleRequestError("Runtime constant K must be positive")

    return StandardSamplingEstimate(
        runtime_constant=runtime_constant,
        shots=runtime_constant / target_rmse ** 2,
        mitigation_overhead=mitigation_overhead(costs, code.logical_gate_error),
        shot_time=costs.ansatz_depth * code.logical_gate_time,
        target_rmse=target_rmse,
    )


def standard_runtime(
    hamiltonian: PauliHamiltonian, target_rmse: float, costs: CircuitCosts, code: CodePoint
) -> StandardSamplingEstimate:
    """Standard-sampling runtime for ``hamiltonian``; see standard_runtime_from_K."""
    return standard_runtime_from_K(runtime_constant_K(hamiltonian), target_rmse, costs, code)


def sample_pauli_estimate(true_pi: float, shots: int, rng: np.random.Generator) -> float:
    """
    Standard-sampling estimate of one expectation value.

    Draws ``shots`` ±1 outcomes with P(+1) = (1 + Π)/2 and returns their mean.
    """
    if not -1.0 <= true_pi <= 1.0:
        raise ConfigurationError(f"Expectation value must lie in [-1, 1], got {true_pi}")
    if shots < 1:
        raise ConfigurationError(f"Shot count must be positive, got {shots}")
    plus = int(rng.binomial(shots, 0.5 * (1.0 + true_pi)))
    return (plus - (shots - plus)) / shots
