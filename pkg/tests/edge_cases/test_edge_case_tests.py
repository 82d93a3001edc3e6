"""
raeperf - Edge Case Tests

This module contains tests for boundary conditions and degenerate inputs
across inference, allocation and the cost models.
"""

import math

import numpy as np
import pytest

from src.estimation.bayesian_inference import GridPosterior, LayerPolicy, TrialConfig, choose_layer_count, run_trial
from src.estimation.likelihood import NoiseModel
from src.hamiltonians import parse_hamiltonian
from src.prediction import Method, optimal_point, sweep
from src.resources import (
    Connectivity,
    RuntimeModelParams,
    allocate,
    circuit_costs,
    code_point,
    distance_for_error,
    layer_decay,
)
from test_helpers import TestDataFactory


@pytest.mark.edge_case
class TestInferenceEdgeCases:
    """Edge cases of simulated trials."""

    @pytest.mark.parametrize("true_pi", [1.0, -1.0])
    def test_extreme_expectation_values(self, true_pi):
        """Test trials at θ = 0 and θ = π."""
        config = TrialConfig(**TestDataFactory.create_trial_config_data(true_pi=true_pi, max_steps=40))
        trace = run_trial(config)
        assert len(trace) == 40
        assert -1.0 <= trace.final.pi_hat <= 1.0
        assert math.isfinite(trace.final.sq_err_pi)

    def test_very_noisy_layers(self):
        """Test that layer fidelity 0.5 keeps L within ceil(3/λ)."""
        config = TrialConfig(**TestDataFactory.create_trial_config_data(noise=NoiseModel.from_layer_fidelity(0.5)))
        trace = run_trial(config)
        assert trace.column("layers").max() <= 5
        assert trace.final.sd < trace.steps[0].sd

    def test_standard_sampling_policy(self):
        """Test that the fixed L = 0 policy costs one query per step."""
        config = TrialConfig(
            **TestDataFactory.create_trial_config_data(layer_policy=LayerPolicy(kind="fixed"), max_steps=25)
        )
        trace = run_trial(config)
        assert set(trace.column("layers")) == {0}
        assert trace.final.cum_layers == 25

    def test_zero_layer_cap(self):
        """Test that max_layers = 0 forces L = 0."""
        config = TrialConfig(
            **TestDataFactory.create_trial_config_data(layer_policy=LayerPolicy(max_layers=0), max_steps=10)
        )
        assert set(run_trial(config).column("layers")) == {0}

    def test_zero_jitter(self):
        """Test a prior centred exactly on the true phase."""
        config = TrialConfig(**TestDataFactory.create_trial_config_data(prior_mean_jitter_sd=0.0, max_steps=5))
        assert len(run_trial(config)) == 5

    def test_single_step(self):
        """Test the smallest step budget."""
        trace = run_trial(TrialConfig(**TestDataFactory.create_trial_config_data(max_steps=1)))
        assert trace.final.step == 1

    def test_spam_only_noise(self):
        """Test λ = 0 with imperfect SPAM."""
        posterior = GridPosterior.uniform(2001)
        assert choose_layer_count(posterior, NoiseModel(lam=0.0, p_bar=0.5)) >= 0


@pytest.mark.edge_case
class TestAllocationEdgeCases:
    """Edge cases of the term allocation."""

    def test_identity_plus_single_term(self):
        """Test that the identity offset does not consume error budget."""
        h = parse_hamiltonian("-7.5 IIII\n0.25 ZZII")
        result = allocate(h, 1e-3, RuntimeModelParams(lam=1e-3))
        assert result.epsilons[0] == pytest.approx(4e-3, rel=1e-9)

    def test_loose_target(self):
        """Test ε̄ large compared with the coefficients."""
        h = parse_hamiltonian("0.1 ZI\n0.1 IZ")
        result = allocate(h, 1.0, RuntimeModelParams(lam=1e-2))
        assert result.constraint_residual < 1e-9
        assert np.all(result.term_runtimes > 0)

    def test_extreme_coefficient_spread(self):
        """Test coefficients spanning eight orders of magnitude."""
        h = parse_hamiltonian("1.0 ZI\n1e-8 IZ")
        result = allocate(h, 1e-3, RuntimeModelParams(lam=1e-3))
        assert result.constraint_residual < 1e-9
        assert result.term_runtimes[1] < result.term_runtimes[0]

    def test_negative_coefficients(self):
        """Test that only |μ_i| matters."""
        positive = allocate(parse_hamiltonian("0.5 ZI\n0.2 IZ"), 1e-3, RuntimeModelParams(lam=1e-4))
        mixed = allocate(parse_hamiltonian("-0.5 ZI\n0.2 IZ"), 1e-3, RuntimeModelParams(lam=1e-4))
        np.testing.assert_allclose(positive.epsilons, mixed.epsilons, rtol=1e-14)


@pytest.mark.edge_case
class TestCostModelEdgeCases:
    """Edge cases of the circuit and surface-code models."""

    def test_distance_for_exact_gate_error(self):
        """Test that a target equal to a code point's error selects that distance."""
        target = code_point(17).logical_gate_error
        assert distance_for_error(target).distance == 17

    def test_perfect_gates(self):
        """Test zero gate error: no decay."""
        noise = layer_decay(circuit_costs(4, Connectivity.ALL_TO_ALL), 0.0)
        assert noise.layer_fidelity == 1.0

    def test_smallest_register_sweep(self):
        """Test the minimum register of four qubits."""
        h = parse_hamiltonian("0.5 ZZII\n-0.5 XXII\n0.2 IIZZ")
        points = sweep(h, 1e-3, Connectivity.ALL_TO_ALL, None, range(3, 31))
        assert optimal_point(points, Method.RAE).rae_valid
        assert optimal_point(points, Method.VQE).distance >= 3

    def test_single_distance_sweep(self):
        """Test a sweep over one distance."""
        points = sweep(TestDataFactory.create_chain_hamiltonian(4), 1e-3, "2d", None, [25])
        assert len(points) == 1
        assert points[0].distance == 25

    def test_every_point_below_fidelity_floor(self):
        """Test a floor no distance can satisfy."""
        points = sweep(
            TestDataFactory.create_chain_hamiltonian(4), 1e-3, "a2a", None, range(3, 8), min_layer_fidelity=1.0
        )
        assert not any(p.rae_valid for p in points)
        assert all(math.isinf(p.rae_runtime) for p in points)
