"""
Hamiltonians Module

This module provides Pauli Hamiltonian value types, parsing and
serialization, and synthetic Hamiltonian generation.
"""

from .hamiltonian_parser import (
    HamiltonianParser,
    hamiltonian_to_dict,
    load_hamiltonian,
    parse_hamiltonian,
    serialize_hamiltonian,
)
from .pauli_hamiltonian import PauliHamiltonian, PauliString, PauliTerm, energy_estimate, one_norm
from .synthesis import CoefficientLaw, synthesize_hamiltonian

__all__ = [
    "PauliString",
    "PauliTerm",
    "PauliHamiltonian",
    "one_norm",
    "energy_estimate",
    "HamiltonianParser",
    "parse_hamiltonian",
    "load_hamiltonian",
    "serialize_hamiltonian",
    "hamiltonian_to_dict",
    "CoefficientLaw",
    "synthesize_hamiltonian",
]
