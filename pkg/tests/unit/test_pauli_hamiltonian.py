"""
Pauli Hamiltonian Tests

This module contains tests for the PauliString/PauliHamiltonian value types,
the line-format and JSON parsers, and synthetic Hamiltonian generation.
"""

import json

import pytest

from src.core.exceptions import ConfigurationError, HamiltonianFormatError, InfeasibleRequestError
from src.hamiltonians import (
    CoefficientLaw,
    PauliHamiltonian,
    PauliString,
    PauliTerm,
    energy_estimate,
    hamiltonian_to_dict,
    load_hamiltonian,
    one_norm,
    parse_hamiltonian,
    serialize_hamiltonian,
    synthesize_hamiltonian,
)
from test_helpers import labels_of


@pytest.mark.unit
class TestPauliString:
    """Test cases for PauliString."""

    def test_weight_counts_non_identity_axes(self):
        """Test that weight ignores identity axes."""
        assert PauliString("XIZY").weight == 3
        assert PauliString("IIII").weight == 0

    def test_identity_detection(self):
        """Test identity detection."""
        assert PauliString("III").is_identity
        assert not PauliString("IZI").is_identity

    def test_invalid_axes_rejected(self):
        """Test that unknown axis letters are rejected."""
        with pytest.raises(ConfigurationError):
            PauliString("XQ")

    def test_non_finite_coefficient_rejected(self):
        """Test that NaN coefficients are rejected."""
        with pytest.raises(ConfigurationError):
            PauliTerm(float("nan"), PauliString("Z"))


@pytest.mark.unit
class TestParseHamiltonian:
    """Test cases for line-format parsing."""

    def test_three_term_example(self):
        """Test direct parse of the three-term example."""
        h = parse_hamiltonian("0.5 ZZ\n-0.25 XI\n-0.25 IX")
        assert len(h) == 3
        assert h.num_qubits == 2
        assert labels_of(h) == ["ZZ", "XI", "IX"]

    def test_duplicates_merge(self):
        """Test that repeated strings are merged."""
        h = parse_hamiltonian("0.5 ZZ\n0.25 ZZ")
        assert len(h) == 1
        assert h.terms[0].coefficient == pytest.approx(0.75)

    def test_cancelled_terms_dropped(self):
        """Test that terms summing to exactly zero disappear."""
        h = parse_hamiltonian("0.5 ZZ\n1.0 XX\n-0.5 ZZ")
        assert labels_of(h) == ["XX"]

    def test_inconsistent_lengths_report_line(self):
        """Test that a length mismatch names the offending line."""
        with pytest.raises(HamiltonianFormatError) as excinfo:
            parse_hamiltonian("0.5 ZZY\n1.0 XI")
        assert excinfo.value.line_number == 2
        assert "line 2" in str(excinfo.value)

    def test_comments_and_blank_lines_ignored(self):
        """Test comment and blank-line handling."""
        h = parse_hamiltonian("# header\n\n0.5 ZZ  # trailing\n\n-1e-2 XX\n")
        assert labels_of(h) == ["ZZ", "XX"]
        assert h.terms[1].coefficient == pytest.approx(-0.01)

    @pytest.mark.parametrize(
        "source, line",
        [
            ("abc ZZ", 1),
            ("0.5 ZA", 1),
            ("0.5 ZZ\n0.5", 2),
            ("0.5 ZZ\ninf XX", 2),
        ],
    )
    def test_malformed_lines(self, source, line):
        """Test malformed coefficients, axes and token counts."""
        with pytest.raises(HamiltonianFormatError) as excinfo:
            parse_hamiltonian(source)
        assert excinfo.value.line_number == line

    def test_empty_document_rejected(self):
        """Test that a document without terms is rejected."""
        with pytest.raises(HamiltonianFormatError):
            parse_hamiltonian("# nothing here\n")

    def test_json_document(self):
        """Test the JSON format."""
        source = json.dumps({"num_qubits": 2, "terms": [{"coeff": 0.5, "pauli": "ZZ"}, {"coeff": 1, "pauli": "II"}]})
        h = parse_hamiltonian(source)
        assert h.num_qubits == 2
        assert h.identity_offset == pytest.approx(1.0)

    def test_json_length_mismatch(self):
        """Test that JSON terms must match num_qubits."""
        source = json.dumps({"num_qubits": 3, "terms": [{"coeff": 0.5, "pauli": "ZZ"}]})
        with pytest.raises(HamiltonianFormatError):
            parse_hamiltonian(source)

    def test_serialized_text_parses_back(self, small_hamiltonian):
        """Test that the canonical line format reproduces the Hamiltonian."""
        assert parse_hamiltonian(serialize_hamiltonian(small_hamiltonian)) == small_hamiltonian

    def test_dict_form(self, small_hamiltonian):
        """Test the JSON-document form."""
        document = hamiltonian_to_dict(small_hamiltonian)
        assert document["num_qubits"] == 2
        assert document["terms"][0] == {"coeff": 0.5, "pauli": "ZZ"}
        assert parse_hamiltonian(json.dumps(document)) == small_hamiltonian

    def test_load_from_files(self, tmp_path, small_hamiltonian):
        """Test loading line-format and JSON files."""
        text_path = tmp_path / "h.txt"
        text_path.write_text(serialize_hamiltonian(small_hamiltonian))
        json_path = tmp_path / "h.json"
        json_path.write_text(json.dumps(hamiltonian_to_dict(small_hamiltonian)))
        assert load_hamiltonian(text_path) == small_hamiltonian
        assert load_hamiltonian(json_path) == small_hamiltonian

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a configuration error."""
        with pytest.raises(ConfigurationError):
            load_hamiltonian(tmp_path / "absent.txt")


@pytest.mark.unit
class TestOneNorm:
    """Test cases for one_norm and energy_estimate."""

    def test_three_term_norm(self, small_hamiltonian):
        """Test the three-term example norm."""
        assert one_norm(small_hamiltonian) == pytest.approx(1.0)

    def test_identity_excluded_by_default(self):
        """Test identity exclusion."""
        assert one_norm(parse_hamiltonian("1.0 II")) == 0.0

    def test_identity_included_on_request(self):
        """Test identity inclusion."""
        assert one_norm(parse_hamiltonian("1.0 II\n2.0 ZI"), include_identity=True) == pytest.approx(3.0)

    def test_energy_estimate_adds_offset(self):
        """Test that the energy is offset plus weighted expectation values."""
        h = parse_hamiltonian("-1.0 II\n0.5 ZI\n0.25 IZ")
        assert energy_estimate(h, [1.0, -1.0]) == pytest.approx(-1.0 + 0.5 - 0.25)

    def test_energy_estimate_length_checked(self, small_hamiltonian):
        """Test that one estimate per term is required."""
        with pytest.raises(ConfigurationError):
            energy_estimate(small_hamiltonian, [0.1, 0.2])

    def test_empty_hamiltonian_needs_qubit_count(self):
        """Test that an empty Hamiltonian needs an explicit qubit count."""
        with pytest.raises(ConfigurationError):
            PauliHamiltonian([])
        assert PauliHamiltonian([], num_qubits=3).num_qubits == 3


@pytest.mark.unit
class TestSynthesizeHamiltonian:
    """Test cases for synthetic Hamiltonians."""

    def test_deterministic_under_seed(self):
        """Test that the same seed gives the same Hamiltonian."""
        law = CoefficientLaw(kind="uniform", scale=1.0)
        assert synthesize_hamiltonian(2, 3, law, seed=7) == synthesize_hamiltonian(2, 3, law, seed=7)

    def test_too_many_terms(self):
        """Test that more terms than non-identity strings is infeasible."""
        with pytest.raises(InfeasibleRequestError):
            synthesize_hamiltonian(2, 16)

    def test_all_strings_available(self):
        """Test that every non-identity string can be used."""
        h = synthesize_hamiltonian(2, 15, seed=3)
        assert len(h) == 15
        assert not h.has_identity

    def test_log_uniform_magnitudes(self):
        """Test distinct strings and magnitude range under the log-uniform law."""
        law = CoefficientLaw(kind="log_uniform", low=1e-3, high=1.0)
        h = synthesize_hamiltonian(4, 10, law, seed=1)
        assert len(set(labels_of(h))) == 10
        magnitudes = abs(h.coefficients())
        assert magnitudes.min() >= 1e-3 * (1 - 1e-12)
        assert magnitudes.max() <= 1.0 * (1 + 1e-12)

    def test_rejection_sampling_for_wide_registers(self):
        """Test distinct strings when the candidate set is too large to enumerate."""
        h = synthesize_hamiltonian(12, 40, seed=5)
        assert len(h) == 40
        assert all(len(label) == 12 for label in labels_of(h))

    def test_invalid_log_uniform_range(self):
        """Test that low > high is rejected."""
        with pytest.raises(ValueError):
            CoefficientLaw(kind="log_uniform", low=1.0, high=0.1)
