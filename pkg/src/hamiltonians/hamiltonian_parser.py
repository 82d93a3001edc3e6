"""
Hamiltonian Parser

This module implements the HamiltonianParser class for reading Pauli
Hamiltonians from text documents. Two formats are supported:

1. Line format: one ``<coefficient> <pauli-string>`` pair per line, with
   ``#`` comments and blank lines ignored.
2. JSON format: ``{"num_qubits": n, "terms": [{"coeff": c, "pauli": "XZ"}]}``.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from src.core.exceptions import ConfigurationError, HamiltonianFormatError
from src.hamiltonians.pauli_hamiltonian import PAULI_AXES, PauliHamiltonian, PauliString, PauliTerm

logger = logging.getLogger(__name__)


class HamiltonianParser:
    """Parses Pauli Hamiltonians from line-format or JSON documents."""

    def __init__(self):
        self.supported_formats = ["text", "json"]

    def parse(self, source: str) -> PauliHamiltonian:
        """
        Parse a Hamiltonian document, detecting its format.

        Args:
            source: Document text

        Returns:
            The parsed PauliHamiltonian
        """
        if source.lstrip().startswith("{"):
            return self.parse_json(source)
        return self.parse_text(source)

    def parse_text(self, source: str) -> PauliHamiltonian:
        terms: List[PauliTerm] = []
        num_qubits: Optional[int] = None

        for line_number, raw_line in enumerate(source.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue

            tokens = line.split()
            if len(tokens) != 2:
                raise HamiltonianFormatError(
                    f"expected '<coefficient> <pauli-string>', got '{raw_line.strip()}'", line_number
                )
            coefficient = self._parse_coefficient(tokens[0], line_number)
            axes = tokens[1]
            self._check_axes(axes, line_number)

            if num_qubits is None:
                num_qubits = len(axes)
            elif len(axes) != num_qubits:
                raise HamiltonianFormatError(
                    f"Pauli string '{axes}' has length {len(axes)}, expected {num_qubits}", line_number
                )
            terms.append(PauliTerm(coefficient, PauliString(axes)))

        if num_qubits is None:
            raise HamiltonianFormatError("document contains no terms")

        hamiltonian = PauliHamiltonian(terms, num_qubits=num_qubits)
        logger.debug(f"Parsed {len(terms)} lines into {len(hamiltonian)} terms on {num_qubits} qubits")
        return hamiltonian

    def parse_json(self, source: str) -> PauliHamiltonian:
        try:
            document = json.loads(source)
        except json.JSONDecodeError as e:
            raise HamiltonianFormatError(f"invalid JSON: {e.msg}", e.lineno) from e

        if not isinstance(document, dict) or "terms" not in document:
            raise HamiltonianFormatError("JSON document must be an object with a 'terms' list")

        num_qubits = document.get("num_qubits")
        if num_qubits is not None and (not isinstance(num_qubits, int) or num_qubits < 1):
            raise HamiltonianFormatError(f"num_qubits must be a positive integer, got {num_qubits!r}")

        terms: List[PauliTerm] = []
        for index, entry in enumerate(document["terms"]):
            if not isinstance(entry, dict) or "coeff" not in entry or "pauli" not in entry:
                raise HamiltonianFormatError(f"term {index} must have 'coeff' and 'pauli' fields")
            coefficient = self._parse_coefficient(entry["coeff"], None, label=f"term {index}")
            axes = entry["pauli"]
            if not isinstance(axes, str):
                raise HamiltonianFormatError(f"term {index}: pauli must be a string")
            self._check_axes(axes, None, label=f"term {index}")
            if num_qubits is None:
                num_qubits = len(axes)
            elif len(axes) != num_qubits:
                raise HamiltonianFormatError(
                    f"term {index}: Pauli string '{axes}' has length {len(axes)}, expected {num_qubits}"
                )
            terms.append(PauliTerm(coefficient, PauliString(axes)))

        if num_qubits is None:
            raise HamiltonianFormatError("document contains no terms and no num_qubits")
        return PauliHamiltonian(terms, num_qubits=num_qubits)

    def _parse_coefficient(self, token: Any, line_number: Optional[int], label: str = "") -> float:
        prefix = f"{label}: " if label else ""
        try:
            coefficient = float(token)
        except (TypeError, ValueError):
            raise HamiltonianFormatError(f"{prefix}invalid coefficient '{token}'", line_number)
        if not math.isfinite(coefficient):
            raise HamiltonianFormatError(f"{prefix}non-finite coefficient '{token}'", line_number)
        return coefficient

    def _check_axes(self, axes: str, line_number: Optional[int], label: str = "") -> None:
        prefix = f"{label}: " if label else ""
        if not axes or set(axes) - PAULI_AXES:
            raise HamiltonianFormatError(f"{prefix}invalid Pauli string '{axes}'", line_number)


_parser = HamiltonianParser()


def parse_hamiltonian(source: str) -> PauliHamiltonian:
    """Parse a Hamiltonian from line-format or JSON text."""
    return _parser.parse(source)


def load_hamiltonian(path: Union[str, Path]) -> PauliHamiltonian:
    """
    Load a Hamiltonian from a file.

    Args:
        path: File in line format, or JSON (``.json`` suffix or leading ``{``)

    Returns:
        The parsed PauliHamiltonian
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Hamiltonian file not found: {path}")
    source = path.read_text()
    if path.suffix.lower() == ".json":
        hamiltonian = _parser.parse_json(source)
    else:
        hamiltonian = _parser.parse(source)
    logger.info(f"Loaded Hamiltonian from {path}: {hamiltonian.num_qubits} qubits, {len(hamiltonian)} terms")
    return hamiltonian


def serialize_hamiltonian(hamiltonian: PauliHamiltonian) -> str:
    """Render a Hamiltonian in canonical line format (round-trip exact)."""
    lines = [f"# {hamiltonian.num_qubits} qubits, {len(hamiltonian)} terms"]
    lines.extend(f"{float(term.coefficient)!r} {term.pauli.axes}" for term in hamiltonian.terms)
    if len(hamiltonian) == 0:
        # keeps the qubit count of a fully cancelled Hamiltonian
        lines.append(f"0.0 {'I' * hamiltonian.num_qubits}")
    return "\n".join(lines) + "\n"


def hamiltonian_to_dict(hamiltonian: PauliHamiltonian) -> Dict[str, Any]:
    """JSON-format document for a Hamiltonian."""
    return {
        "num_qubits": hamiltonian.num_qubits,
        "terms": [{"coeff": term.coefficient, "pauli": term.pauli.axes} for term in hamiltonian.terms],
    }
