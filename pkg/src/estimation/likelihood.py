"""
Likelihood Models

This module implements the Chebyshev likelihoods of a single RAE measurement
and the Fisher information they carry about the phase θ, where the
expectation value being estimated is Π = cos θ.

A measurement after L amplification layers returns d ∈ {0, 1} with

    P(d | θ; L) = ½ (1 + (-1)^d · p̄ e^{-λL} cos((2L+1)θ))

under the exponential-decay noise model (λ = 0, p̄ = 1 is noiseless).
All functions accept scalar or numpy-array θ and L.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import ConfigurationError

FloatOrArray = Union[float, np.ndarray]
LayerCount = int


class NoiseModel(BaseModel):
    """Exponential-decay noise model: signal amplitude p̄·e^{-λL} after L layers."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lam: float = Field(0.0, ge=0, description="Per-layer decay rate λ")
    p_bar: float = Field(1.0, gt=0, le=1, description="SPAM fidelity p̄")

    @classmethod
    def from_layer_fidelity(cls, layer_fidelity: float, p_bar: float = 1.0) -> "NoiseModel":
        """Noise model with e^{-λ} equal to ``layer_fidelity``."""
        if not 0.0 < layer_fidelity <= 1.0:
            raise ConfigurationError(f"Layer fidelity must be in (0, 1], got {layer_fidelity}")
        return cls(lam=-math.log(layer_fidelity), p_bar=p_bar)

    @property
    def layer_fidelity(self) -> float:
        return math.exp(-self.lam)

    @property
    def is_noiseless(self) -> bool:
        return self.lam == 0.0 and self.p_bar == 1.0

    def signal_amplitude(self, layers: ArrayLike) -> FloatOrArray:
        return self.p_bar * np.exp(-self.lam * np.asarray(layers, dtype=float))


NOISELESS = NoiseModel()


@dataclass(frozen=True)
class PhasePoint:
    """A phase θ ∈ [0, π] and its expectation value Π = cos θ."""

    theta: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ConfigurationError(f"Phase must lie in [0, pi], got {self.theta}")

    @classmethod
    def from_pi(cls, pi: float) -> "PhasePoint":
        if not -1.0 <= pi <= 1.0:
            raise ConfigurationError(f"Expectation value must lie in [-1, 1], got {pi}")
        return cls(math.acos(pi))

    @property
    def pi(self) -> float:
        return math.cos(self.theta)


def _check_outcome(d: int) -> float:
    if d not in (0, 1):
        raise ConfigurationError(f"Measurement outcome must be 0 or 1, got {d}")
    return 1.0 if d == 0 else -1.0


def _check_layers(layers: ArrayLike) -> np.ndarray:
    layers = np.asarray(layers)
    if np.any(layers < 0):
        raise ConfigurationError("Layer count must be non-negative")
    return layers


def likelihood_noisy(d: int, theta: ArrayLike, noise: NoiseModel, layers: ArrayLike) -> FloatOrArray:
    """
    Probability of outcome ``d`` after ``layers`` noisy amplification layers.

    Args:
        d: Measurement outcome, 0 or 1
        theta: Phase(s) in [0, π]
        noise: Noise model
        layers: Layer count(s) L ≥ 0

    Returns:
        P(d | θ; L), broadcast over ``theta`` and ``layers``
    """
    sign = _check_outcome(d)
    layers = _check_layers(layers)
    p_zero = 0.5 * (1.0 + noise.signal_amplitude(layers) * np.cos((2 * layers + 1) * np.asarray(theta, dtype=float)))
    return p_zero if sign > 0 else 1.0 - p_zero


def likelihood_noiseless(d: int, theta: ArrayLike, layers: ArrayLike) -> FloatOrArray:
    """Noiseless likelihood ½(1 + (-1)^d cos((2L+1)θ))."""
    return likelihood_noisy(d, theta, NOISELESS, layers)


def fisher_information(theta: ArrayLike, noise: NoiseModel, layers: ArrayLike) -> FloatOrArray:
    """
    Fisher information about θ carried by one measurement.

    I(θ; L) = (2L+1)² a² sin²((2L+1)θ) / (1 - a² cos²((2L+1)θ)) with a = p̄e^{-λL}.
    Returns 0 at the removable singularity (sin = 0, a = 1).
    """
    layers = _check_layers(layers)
    k = 2 * np.asarray(layers, dtype=float) + 1
    angle = k * np.asarray(theta, dtype=float)
    sin_sq = np.sin(angle) ** 2
    cos_sq = np.cos(angle) ** 2

    amplitude_sq = noise.signal_amplitude(layers) ** 2
    # 1 - a² written without cancellation
    one_minus_a_sq = -np.expm1(2.0 * math.log(noise.p_bar) - 2.0 * noise.lam * np.asarray(layers, dtype=float))
    numerator = k ** 2 * amplitude_sq * sin_sq
    denominator = sin_sq + cos_sq * one_minus_a_sq

    numerator, denominator = np.broadcast_arrays(numerator, denominator)
    result = np.divide(
        numerator, denominator, out=np.zeros(numerator.shape, dtype=float), where=denominator > 0
    )
    if result.ndim == 0:
        return float(result)
    return result
