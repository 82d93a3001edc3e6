"""
raeperf - Property-Based Tests using Hypothesis

This module contains property-based tests for the likelihood model,
Bayesian updates, the term allocation and the cost models.
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from src.estimation.bayesian_inference import GridPosterior, bayes_update, trimmed_count
from src.estimation.likelihood import NoiseModel, fisher_information, likelihood_noisy
from src.hamiltonians import CoefficientLaw, parse_hamiltonian, serialize_hamiltonian, synthesize_hamiltonian
from src.prediction import fit_power_law
from src.resources import (
    RuntimeModelParams,
    allocate,
    code_point,
    physical_qubits,
    runtime_model,
    uniform_allocation_runtime,
)
from test_helpers import TestDataFactory

thetas = st.floats(min_value=0.0, max_value=math.pi)
decay_rates = st.floats(min_value=0.0, max_value=0.5)
spam_fidelities = st.floats(min_value=0.05, max_value=1.0)
layer_counts = st.integers(min_value=0, max_value=200)
coefficient_lists = st.lists(
    st.floats(min_value=1e-3, max_value=10.0).flatmap(lambda m: st.sampled_from([m, -m])),
    min_size=1,
    max_size=40,
)


@pytest.mark.property
class TestLikelihoodProperties:
    """Property-based tests for likelihoods and Fisher information."""

    @given(thetas, decay_rates, spam_fidelities, layer_counts)
    def test_probabilities_normalized(self, theta, lam, p_bar, layers):
        """Test that both outcomes are probabilities summing to one."""
        noise = NoiseModel(lam=lam, p_bar=p_bar)
        p0 = likelihood_noisy(0, theta, noise, layers)
        p1 = likelihood_noisy(1, theta, noise, layers)
        assert 0.0 <= p0 <= 1.0
        assert p0 + p1 == pytest.approx(1.0, abs=1e-14)

    @given(thetas, decay_rates, spam_fidelities, layer_counts)
    def test_reflection(self, theta, lam, p_bar, layers):
        """Test P(0 | π-θ) = P(1 | θ)."""
        noise = NoiseModel(lam=lam, p_bar=p_bar)
        assert likelihood_noisy(0, math.pi - theta, noise, layers) == pytest.approx(
            likelihood_noisy(1, theta, noise, layers), abs=1e-12
        )

    @given(thetas, decay_rates, spam_fidelities, layer_counts)
    def test_fisher_bounded_by_signal(self, theta, lam, p_bar, layers):
        """Test 0 ≤ F ≤ (2L+1)²·(p̄e^{-λL})²."""
        noise = NoiseModel(lam=lam, p_bar=p_bar)
        bound = (2 * layers + 1) ** 2 * (p_bar * math.exp(-lam * layers)) ** 2
        value = fisher_information(theta, noise, layers)
        assert 0.0 <= value <= bound * (1 + 1e-12) + 1e-300

    @settings(deadline=None, max_examples=50)
    @given(st.integers(0, 1), st.integers(0, 30), decay_rates, spam_fidelities)
    def test_update_normalized(self, outcome, layers, lam, p_bar):
        """Test that a Bayes update from the uniform posterior stays normalized."""
        posterior = bayes_update(GridPosterior.uniform(401), outcome, layers, NoiseModel(lam=lam, p_bar=p_bar))
        assert np.all(posterior.weights >= 0)
        assert posterior.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= posterior.mean <= math.pi


@pytest.mark.property
class TestAllocationProperties:
    """Property-based tests for the term allocation."""

    @settings(deadline=None)
    @given(
        coefficient_lists,
        st.floats(min_value=1e-5, max_value=1e-1),
        st.sampled_from([0.0, 1e-5, 1e-3, 1e-1]),
        st.floats(min_value=0.1, max_value=10.0),
    )
    def test_error_budget_met(self, coefficients, target_rmse, lam, omega):
        """Test Σμ²ε² = ε̄² for arbitrary coefficients and noise."""
        h = TestDataFactory.create_hamiltonian(coefficients, num_qubits=8)
        result = allocate(h, target_rmse, RuntimeModelParams(lam=lam, omega=omega))
        assert result.constraint_residual < 1e-9
        assert np.all(np.isfinite(result.term_runtimes))
        assert result.parallel_runtime <= result.total_runtime

    @settings(deadline=None)
    @given(coefficient_lists, st.floats(min_value=1e-5, max_value=1e-1))
    def test_noiseless_never_worse_than_uniform(self, coefficients, target_rmse):
        """Test allocate ≤ uniform at λ = 0."""
        h = TestDataFactory.create_hamiltonian(coefficients, num_qubits=8)
        params = RuntimeModelParams()
        assert allocate(h, target_rmse, params).total_runtime <= uniform_allocation_runtime(h, target_rmse, params) * (
            1 + 1e-9
        )

    @given(st.floats(min_value=1e-6, max_value=1.0), st.floats(min_value=1e-6, max_value=1.0), decay_rates)
    def test_runtime_decreasing_in_error(self, eps_a, eps_b, lam):
        """Test that a looser target never costs more."""
        assume(eps_a < eps_b)
        params = RuntimeModelParams(lam=lam)
        assert runtime_model(eps_a, params) >= runtime_model(eps_b, params)


@pytest.mark.property
class TestModelProperties:
    """Property-based tests for Hamiltonians, statistics and cost models."""

    @settings(deadline=None, max_examples=30)
    @given(st.integers(2, 6), st.integers(1, 20), st.integers(0, 10_000))
    def test_serialized_hamiltonian_parses_back(self, num_qubits, num_terms, seed):
        """Test that the canonical text reproduces a synthetic Hamiltonian."""
        assume(num_terms < 4 ** num_qubits)
        law = CoefficientLaw(kind="log_uniform", low=1e-4, high=2.0)
        h = synthesize_hamiltonian(num_qubits, num_terms, law, seed=seed)
        assert parse_hamiltonian(serialize_hamiltonian(h)) == h

    @given(st.integers(1, 1000), st.floats(min_value=0.0, max_value=0.99))
    def test_trimmed_count_bounds(self, n, trim):
        """Test that trimming keeps at least one trial and drops at least ⌈t·n⌉ - 1."""
        k = trimmed_count(n, trim)
        assert 0 <= k <= n - 1
        assert k >= min(math.ceil(trim * n) - 1, n - 1)

    @given(st.integers(3, 49))
    def test_gate_error_decreases(self, distance):
        """Test r̄_g(d + 1) < r̄_g(d) and the 2d² footprint."""
        assert code_point(distance + 1).logical_gate_error < code_point(distance).logical_gate_error
        assert physical_qubits(3, distance) == 6 * distance ** 2

    @given(
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.5, max_value=4.0),
        st.integers(4, 50),
        st.integers(2, 10),
    )
    def test_two_point_fit_exact(self, a, b, n0, factor):
        """Test that two points from a·N^b are recovered exactly."""
        n1 = n0 * factor
        fit = fit_power_law([(n0, a * n0 ** b), (n1, a * n1 ** b)])
        assert fit.b == pytest.approx(b, rel=1e-9)
        assert fit.a == pytest.approx(a, rel=1e-8)
