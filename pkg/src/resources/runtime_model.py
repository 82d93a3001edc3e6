"""
RAE Runtime Model

This module implements the closed-form RAE runtime model and the
per-term accuracy allocation that minimizes the total runtime of an energy
estimate subject to a target error.

For a single expectation value estimated to RMSE ε the expected cost in
circuit layers is

    t_ε = (e²/(e-1)) · (e^{-λ}/(2p̄²)) · [λ/ε² + 1/(√2ε) + √((λ/ε²)² + (2√2/ε)²)]

and the wall-clock cost of term i at accuracy ε_i is

    T_i = (ω/2) · [λ/ε_i² + 1/(√2ε_i) + √((λ/ε_i²)² + (√8/ε_i)²)]

with ω the per-layer time scale (ω = τ_l·(e²/(e-1))·e^{-λ}/p̄² reproduces t_ε).
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from src.core.exceptions import ComputationError, ConfigurationError, InfeasibleRequestError
from src.estimation.likelihood import NoiseModel
from src.hamiltonians.pauli_hamiltonian import PauliHamiltonian

logger = logging.getLogger(__name__)

E_FACTOR = math.e ** 2 / (math.e - 1.0)
ALPHA = 0.5 * (math.sqrt(0.5) + math.sqrt(8.0))

FloatOrArray = Union[float, np.ndarray]


class RuntimeModelParams(BaseModel):
    """Noise and time-scale parameters of the runtime model."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lam: float = Field(0.0, ge=0)
    p_bar: float = Field(1.0, gt=0, le=1)
    omega: float = Field(1.0, gt=0)

    @classmethod
    def calibrated(cls, noise: NoiseModel, layer_time: float = 1.0) -> "RuntimeModelParams":
        """
        Parameters whose per-term runtime equals ``layer_time`` times t_ε.

        Args:
            noise: Layer noise model
            layer_time: Wall-clock time of one layer (1.0 gives layer units)
        """
        if not layer_time > 0:
            raise ConfigurationError(f"Layer time must be positive, got {layer_time}")
        omega = layer_time * E_FACTOR * math.exp(-noise.lam) / noise.p_bar ** 2
        return cls(lam=noise.lam, p_bar=noise.p_bar, omega=omega)

    @property
    def noise(self) -> NoiseModel:
        return NoiseModel(lam=self.lam, p_bar=self.p_bar)


def _bracket(epsilon: ArrayLike, lam: float) -> np.ndarray:
    epsilon = np.asarray(epsilon, dtype=float)
    if np.any(epsilon <= 0):
        raise ConfigurationError("Target error must be positive")
    shot_noise = lam / epsilon ** 2
    return shot_noise + 1.0 / (math.sqrt(2.0) * epsilon) + np.hypot(shot_noise, math.sqrt(8.0) / epsilon)


def runtime_model(epsilon: ArrayLike, params: Union[RuntimeModelParams, NoiseModel]) -> FloatOrArray:
    """Expected layers to estimate one expectation value to RMSE ``epsilon``."""
    prefactor = E_FACTOR * math.exp(-params.lam) / (2.0 * params.p_bar ** 2)
    result = prefactor * _bracket(epsilon, params.lam)
    return float(result) if result.ndim == 0 else result


def per_term_runtime(epsilon: ArrayLike, params: RuntimeModelParams) -> FloatOrArray:
    """Wall-clock runtime of one term estimated to RMSE ``epsilon``."""
    result = 0.5 * params.omega * _bracket(epsilon, params.lam)
    return float(result) if result.ndim == 0 else result


def ansatz_queries(layers: ArrayLike) -> FloatOrArray:
    """Ansatz applications per shot for L layers (2L + 1)."""
    result = 2 * np.asarray(layers) + 1
    return result.item() if result.ndim == 0 else result


@dataclass(frozen=True, eq=False)
class AllocationResult:
    """Per-term accuracies and runtimes of an energy estimate."""

    labels: Tuple[str, ...]
    coefficients: np.ndarray
    epsilons_sq: np.ndarray
    multiplier: float
    term_runtimes: np.ndarray
    target_rmse: float
    params: RuntimeModelParams

    @property
    def epsilons(self) -> np.ndarray:
        return np.sqrt(self.epsilons_sq)

    @property
    def total_runtime(self) -> float:
        return float(np.sum(self.term_runtimes))

    @property
    def parallel_runtime(self) -> float:
        """Runtime when every term has its own device."""
        return float(np.max(self.term_runtimes))

    @property
    def constraint_residual(self) -> float:
        """Relative error of Σ μ_i² ε_i² against ε̄²."""
        achieved = float(np.sum(self.coefficients ** 2 * self.epsilons_sq))
        return abs(achieved - self.target_rmse ** 2) / self.target_rmse ** 2

    def layer_time(self) -> float:
        """Per-layer wall-clock time implied by the calibration of ω."""
        return self.params.omega * self.params.p_bar ** 2 / (E_FACTOR * math.exp(-self.params.lam))

    @property
    def total_layers(self) -> float:
        return self.total_runtime / self.layer_time()

    @property
    def max_layers(self) -> float:
        return self.parallel_runtime / self.layer_time()

    def to_frame(self) -> pd.DataFrame:
        """Per-term rows followed by summary rows for Λ, T_* and T_parallel."""
        frame = pd.DataFrame(
            {
                "term_index": np.arange(len(self.labels)),
                "pauli": list(self.labels),
                "mu": self.coefficients,
                "epsilon_i": self.epsilons,
                "T_i_seconds": self.term_runtimes,
            }
        )
        summary = pd.DataFrame(
            {
                "term_index": ["Lambda", "T_total", "T_parallel"],
                "pauli": ["", "", ""],
                "mu": [np.nan, np.nan, np.nan],
                "epsilon_i": [np.nan, np.nan, np.nan],
                "T_i_seconds": [self.multiplier, self.total_runtime, self.parallel_runtime],
            }
        )
        return pd.concat([frame.astype({"term_index": object}), summary], ignore_index=True)


def _solve_multiplier_root(target_rmse: float, b: float, c: float) -> float:
    """Positive root x of x⁴ε̄² - b·x - c = 0 (x = Λ^{1/6})."""
    target_sq = target_rmse ** 2

    def residual(x: float) -> float:
        return x ** 4 * target_sq - b * x - c

    upper = max(1.0, (c / target_sq) ** 0.25, (b / target_sq) ** (1.0 / 3.0))
    for _ in range(200):
        if residual(upper) > 0:
            break
        upper *= 2.0
    else:
        raise ComputationError("Could not bracket the allocation multiplier")

    return brentq(residual, 0.0, upper, xtol=upper * 1e-16, rtol=1e-14, maxiter=500)


def allocate(hamiltonian: PauliHamiltonian, target_rmse: float, params: RuntimeModelParams) -> AllocationResult:
    """
    Allocate per-term accuracies to minimize total runtime.

    Solves the multiplier equation for x = Λ^{1/6}, sets
    ε_i² = √(2ωλ)/(Λ^{1/2}|μ_i|) + α^{2/3}/(Λ^{2/3}|μ_i|^{4/3}) and rescales
    so that Σ μ_i² ε_i² = ε̄² exactly. The identity term is excluded.

    Args:
        hamiltonian: Hamiltonian whose energy is estimated
        target_rmse: Target energy RMSE ε̄
        params: Runtime model parameters

    Returns:
        AllocationResult
    """
    if not target_rmse > 0:
        raise ConfigurationError(f"Target RMSE must be positive, got {target_rmse}")

    coefficients = hamiltonian.coefficients(include_identity=False)
    mu = np.abs(coefficients)
    if mu.size == 0 or not np.sum(mu) > 0:
        raise InfeasibleRequestError("Hamiltonian has no non-identity terms to allocate")

    b = math.sqrt(2.0 * params.omega * params.lam) * float(np.sum(mu))
    c = ALPHA ** (2.0 / 3.0) * float(np.sum(mu ** (2.0 / 3.0)))
    x = _solve_multiplier_root(target_rmse, b, c)

    epsilons_sq = (
        math.sqrt(2.0 * params.omega * params.lam) / (x ** 3 * mu)
        + ALPHA ** (2.0 / 3.0) / (x ** 4 * mu ** (4.0 / 3.0))
    )
    epsilons_sq *= target_rmse ** 2 / float(np.sum(mu ** 2 * epsilons_sq))

    result = AllocationResult(
        labels=tuple(hamiltonian.labels(include_identity=False)),
        coefficients=coefficients,
        epsilons_sq=epsilons_sq,
        multiplier=x ** 6,
        term_runtimes=np.asarray(per_term_runtime(np.sqrt(epsilons_sq), params), dtype=float).reshape(-1),
        target_rmse=target_rmse,
        params=params,
    )
    logger.debug(
        f"Allocated {mu.size} terms: Lambda={result.multiplier:.6g}, T_total={result.total_runtime:.6g}"
    )
    return result


def uniform_allocation(hamiltonian: PauliHamiltonian, target_rmse: float, params: RuntimeModelParams) -> AllocationResult:
    """Baseline allocation with equal per-term accuracy ε_i² = ε̄²/Σμ²."""
    if not target_rmse > 0:
        raise ConfigurationError(f"Target RMSE must be positive, got {target_rmse}")
    coefficients = hamiltonian.coefficients(include_identity=False)
    if coefficients.size == 0:
        raise InfeasibleRequestError("Hamiltonian has no non-identity terms to allocate")
    epsilons_sq = np.full(coefficients.size, target_rmse ** 2 / float(np.sum(coefficients ** 2)))
    return AllocationResult(
        labels=tuple(hamiltonian.labels(include_identity=False)),
        coefficients=coefficients,
        epsilons_sq=epsilons_sq,
        multiplier=float("nan"),
        term_runtimes=np.asarray(per_term_runtime(np.sqrt(epsilons_sq), params), dtype=float).reshape(-1),
        target_rmse=target_rmse,
        params=params,
    )


def uniform_allocation_runtime(hamiltonian: PauliHamiltonian, target_rmse: float, params: RuntimeModelParams) -> float:
    """Total runtime of the uniform baseline allocation."""
    return uniform_allocation(hamiltonian, target_rmse, params).total_runtime
