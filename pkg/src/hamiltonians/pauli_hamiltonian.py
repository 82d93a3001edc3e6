"""
Pauli Hamiltonian

This module implements the PauliString, PauliTerm and PauliHamiltonian value
types. A Hamiltonian is a real linear combination of Pauli strings over a
fixed number of qubits; duplicate strings are merged on construction and
terms whose merged coefficient is exactly zero are dropped.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

PAULI_AXES = frozenset("IXYZ")


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Pauli axes, written e.g. ``XIZY``."""

    axes: str

    def __post_init__(self):
        if not isinstance(self.axes, str) or len(self.axes) == 0:
            raise ConfigurationError("Pauli string must have at least one axis")
        invalid = set(self.axes) - PAULI_AXES
        if invalid:
            raise ConfigurationError(
                f"Pauli string '{self.axes}' has invalid axes: {', '.join(sorted(invalid))}"
            )

    @property
    def num_qubits(self) -> int:
        return len(self.axes)

    @property
    def is_identity(self) -> bool:
        return set(self.axes) == {"I"}

    @property
    def weight(self) -> int:
        """Number of non-identity axes."""
        return sum(1 for axis in self.axes if axis != "I")

    def __str__(self) -> str:
        return self.axes


@dataclass(frozen=True)
class PauliTerm:
    """A real coefficient times a Pauli string."""

    coefficient: float
    pauli: PauliString

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise ConfigurationError(f"Non-finite coefficient for term {self.pauli}")


class PauliHamiltonian:
    """Immutable real linear combination of Pauli strings."""

    def __init__(self, terms: Iterable[PauliTerm], num_qubits: Optional[int] = None):
        """
        Initialize PauliHamiltonian.

        Args:
            terms: Terms to combine; duplicates are merged in first-seen order
            num_qubits: Qubit count, required when ``terms`` is empty
        """
        merged: Dict[str, float] = {}
        for term in terms:
            if num_qubits is None:
                num_qubits = term.pauli.num_qubits
            elif term.pauli.num_qubits != num_qubits:
                raise ConfigurationError(
                    f"Pauli string '{term.pauli}' has length {term.pauli.num_qubits}, expected {num_qubits}"
                )
            merged[term.pauli.axes] = merged.get(term.pauli.axes, 0.0) + float(term.coefficient)

        if num_qubits is None or num_qubits < 1:
            raise ConfigurationError("Hamiltonian needs at least one qubit")

        self._num_qubits = int(num_qubits)
        self._terms: Tuple[PauliTerm, ...] = tuple(
            PauliTerm(coefficient, PauliString(axes))
            for axes, coefficient in merged.items()
            if coefficient != 0.0
        )

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    @property
    def terms(self) -> Tuple[PauliTerm, ...]:
        return self._terms

    @property
    def has_identity(self) -> bool:
        return any(term.pauli.is_identity for term in self._terms)

    @property
    def identity_offset(self) -> float:
        """Coefficient of the identity term (0 when absent)."""
        for term in self._terms:
            if term.pauli.is_identity:
                return term.coefficient
        return 0.0

    @property
    def non_identity_terms(self) -> Tuple[PauliTerm, ...]:
        return tuple(term for term in self._terms if not term.pauli.is_identity)

    def coefficients(self, include_identity: bool = False) -> np.ndarray:
        """Coefficients in term order, optionally including the identity term."""
        terms = self._terms if include_identity else self.non_identity_terms
        return np.array([term.coefficient for term in terms], dtype=float)

    def labels(self, include_identity: bool = False) -> List[str]:
        terms = self._terms if include_identity else self.non_identity_terms
        return [term.pauli.axes for term in terms]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliHamiltonian):
            return NotImplemented
        return self._num_qubits == other._num_qubits and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._num_qubits, self._terms))

    def __repr__(self) -> str:
        return f"PauliHamiltonian(num_qubits={self._num_qubits}, terms={len(self._terms)})"


def one_norm(hamiltonian: PauliHamiltonian, include_identity: bool = False) -> float:
    """Sum of absolute coefficients."""
    return float(np.sum(np.abs(hamiltonian.coefficients(include_identity=include_identity))))


def energy_estimate(hamiltonian: PauliHamiltonian, pi_estimates: Sequence[float]) -> float:
    """
    Combine per-term expectation estimates into an energy estimate.

    Args:
        hamiltonian: The Hamiltonian
        pi_estimates: One estimate per non-identity term, in term order

    Returns:
        Identity offset plus the coefficient-weighted sum of estimates
    """
    mu = hamiltonian.coefficients(include_identity=False)
    estimates = np.asarray(pi_estimates, dtype=float)
    if estimates.shape != mu.shape:
        raise ConfigurationError(
            f"Expected {mu.size} expectation estimates, got {estimates.size}"
        )
    return hamiltonian.identity_offset + float(np.dot(mu, estimates))
