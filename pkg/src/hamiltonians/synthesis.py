"""
Synthetic Hamiltonians

This module generates random Pauli Hamiltonians with a prescribed qubit
count, term count and coefficient law, for scaling studies where molecular
Hamiltonians are unavailable.
"""

import logging
import math
from typing import Literal, Optional, Set

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.exceptions import InfeasibleRequestError
from src.hamiltonians.pauli_hamiltonian import PauliHamiltonian, PauliString, PauliTerm

logger = logging.getLogger(__name__)

_AXIS_CHARS = np.array(list("IXYZ"))

# above this many candidate strings, sample by rejection instead of permuting
_ENUMERATION_LIMIT = 1 << 20


class CoefficientLaw(BaseModel):
    """Distribution of synthetic coefficients.

    ``uniform`` draws from U(-scale, scale); ``log_uniform`` draws magnitudes
    log-uniformly in [low, high] with random signs.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["uniform", "log_uniform"] = "uniform"
    scale: float = Field(1.0, gt=0)
    low: float = Field(1e-3, gt=0)
    high: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _check_range(self) -> "CoefficientLaw":
        if self.kind == "log_uniform" and self.low > self.high:
            raise ValueError(f"log_uniform requires low <= high, got {self.low} > {self.high}")
        return self

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "uniform":
            values = rng.uniform(-self.scale, self.scale, size=size)
            # exact zeros would be dropped from the Hamiltonian
            values[values == 0.0] = self.scale
            return values
        magnitudes = np.exp(rng.uniform(math.log(self.low), math.log(self.high), size=size))
        signs = rng.choice(np.array([-1.0, 1.0]), size=size)
        return signs * magnitudes


def _index_to_axes(index: int, num_qubits: int) -> str:
    digits = []
    for _ in range(num_qubits):
        index, digit = divmod(index, 4)
        digits.append("IXYZ"[digit])
    return "".join(reversed(digits))


def _sample_distinct_strings(num_qubits: int, num_terms: int, rng: np.random.Generator) -> list:
    population = 4 ** num_qubits - 1
    if population <= _ENUMERATION_LIMIT:
        indices = rng.choice(population, size=num_terms, replace=False) + 1
        return [_index_to_axes(int(i), num_qubits) for i in indices]

    chosen: Set[str] = set()
    ordered = []
    while len(ordered) < num_terms:
        axes = "".join(_AXIS_CHARS[rng.integers(0, 4, size=num_qubits)])
        if axes in chosen or set(axes) == {"I"}:
            continue
        chosen.add(axes)
        ordered.append(axes)
    return ordered


def synthesize_hamiltonian(
    num_qubits: int,
    num_terms: int,
    coefficient_law: Optional[CoefficientLaw] = None,
    seed: int = 0,
) -> PauliHamiltonian:
    """
    Generate a random Hamiltonian with distinct non-identity Pauli strings.

    Args:
        num_qubits: Number of qubits
        num_terms: Number of distinct non-identity terms
        coefficient_law: Coefficient distribution (default uniform on [-1, 1])
        seed: Random seed

    Returns:
        A PauliHamiltonian with exactly ``num_terms`` terms
    """
    if num_qubits < 1:
        raise InfeasibleRequestError(f"num_qubits must be positive, got {num_qubits}")
    if num_terms < 0:
        raise InfeasibleRequestError(f"num_terms must be non-negative, got {num_terms}")
    available = 4 ** num_qubits - 1
    if num_terms > available:
        raise InfeasibleRequestError(
            f"Cannot place {num_terms} distinct non-identity terms on {num_qubits} qubits "
            f"(at most {available})"
        )

    law = coefficient_law or CoefficientLaw()
    rng = np.random.default_rng(seed)
    strings = _sample_distinct_strings(num_qubits, num_terms, rng)
    coefficients = law.sample(num_terms, rng)

    terms = [PauliTerm(float(c), PauliString(axes)) for c, axes in zip(coefficients, strings)]
    hamiltonian = PauliHamiltonian(terms, num_qubits=num_qubits)
    logger.debug(f"Synthesized {num_terms}-term Hamiltonian on {num_qubits} qubits ({law.kind}, seed={seed})")
    return hamiltonian
