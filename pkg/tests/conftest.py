"""
raeperf - Test Configuration and Fixtures

This module provides shared test configuration, fixtures, and utilities
for all test modules in the raeperf project.
"""

import json
from pathlib import Path

import pytest

from src.core.config import Settings, use_settings
from src.hamiltonians.hamiltonian_parser import serialize_hamiltonian
from src.hamiltonians.pauli_hamiltonian import PauliHamiltonian
from test_helpers import THREE_TERM_TEXT, TestDataFactory, three_term_hamiltonian


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow ensemble simulations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# Settings Fixtures
@pytest.fixture(autouse=True)
def reset_settings():
    """Every test starts and ends with default settings."""
    use_settings(None)
    yield
    use_settings(None)


@pytest.fixture
def fast_settings():
    """Small grids and ensembles for quick simulation tests."""
    return use_settings(Settings(grid_points=401, trials=6, max_workers=2))


# Hamiltonian Fixtures
@pytest.fixture
def small_hamiltonian() -> PauliHamiltonian:
    """The three-term two-qubit example Hamiltonian."""
    return three_term_hamiltonian()


@pytest.fixture
def synthetic_8q() -> PauliHamiltonian:
    """Flat 30-term Hamiltonian on 8 qubits with one-norm 15."""
    return TestDataFactory.create_geometric_hamiltonian(1.0)


@pytest.fixture
def small_hamiltonian_file(tmp_path) -> Path:
    path = tmp_path / "three_term.txt"
    path.write_text(THREE_TERM_TEXT)
    return path


@pytest.fixture
def four_qubit_hamiltonian_file(tmp_path) -> Path:
    path = tmp_path / "four_qubit.txt"
    path.write_text(TestDataFactory.create_hamiltonian_text())
    return path


@pytest.fixture
def series_file(tmp_path) -> Path:
    """Series file with chain Hamiltonians at 4, 6 and 8 qubits, target 10."""
    paths = []
    for n in (4, 6, 8):
        path = tmp_path / f"chain_{n}.txt"
        path.write_text(serialize_hamiltonian(TestDataFactory.create_chain_hamiltonian(n)))
        paths.append(path.name)
    document = TestDataFactory.create_series_document([Path(p) for p in paths], label="chain", target_qubits=10)
    series_path = tmp_path / "series.json"
    series_path.write_text(json.dumps(document))
    return series_path
