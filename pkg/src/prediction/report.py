"""
Runtime Prediction Report

This module turns a labelled series of Hamiltonians into an end-to-end
runtime prediction comparing RAE with standard sampling (VQE):

1. Runtime constant K and RAE layer totals per Hamiltonian
2. Power-law fits in the qubit count N, extrapolated to the target N
   (series with a single N are computed directly)
3. A code-distance sweep at the target N
4. Optimal distances, physical qubits, crossover error rate and the
   VQE/RAE runtime ratio
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError
from src.estimation.likelihood import NoiseModel
from src.hamiltonians.pauli_hamiltonian import PauliHamiltonian
from src.prediction.power_law import extrapolate, fit_power_law
from src.prediction.sweep import (
    LayerCountFunction,
    Method,
    RaeLayerCounts,
    SweepPoint,
    crossover_error_rate,
    hamiltonian_layer_counts,
    optimal_point,
    sweep_from_scaling,
)
from src.resources.circuit_costs import Connectivity
from src.resources.fault_tolerance import SurfaceCodeParams
from src.resources.runtime_model import RuntimeModelParams, allocate, ansatz_queries
from src.resources.standard_sampling import runtime_constant_K

logger = logging.getLogger(__name__)


class ReportConfig(BaseModel):
    """Cost-model settings shared by every label of a report."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    target_rmse: float = Field(default_factory=lambda: get_settings().target_rmse, gt=0)
    connectivity: Connectivity = Connectivity.ALL_TO_ALL
    surface_code: SurfaceCodeParams = Field(default_factory=SurfaceCodeParams)
    d_min: int = Field(3, ge=3)
    d_max: Optional[int] = Field(None, ge=3)
    p_bar: float = Field(1.0, gt=0, le=1)
    min_layer_fidelity: float = Field(default_factory=lambda: get_settings().min_layer_fidelity, gt=0, le=1)

    @model_validator(mode="after")
    def _check_range(self) -> "ReportConfig":
        if self.d_max is not None and self.d_max < self.d_min:
            raise ValueError(f"d_max ({self.d_max}) must not be below d_min ({self.d_min})")
        return self

    @property
    def distances(self) -> range:
        return range(self.d_min, (self.d_max or self.surface_code.max_distance) + 1)


@dataclass(frozen=True)
class LabeledSeries:
    """Hamiltonians of one system at increasing qubit counts."""

    label: str
    hamiltonians: Tuple[PauliHamiltonian, ...]
    target_qubits: Optional[int] = None


class RuntimePrediction(BaseModel):
    """Predicted optimal runtimes of RAE and VQE for one label."""

    model_config = ConfigDict(frozen=True)

    label: str
    logical_qubits: int
    fitted: bool
    target_rmse: float
    connectivity: Connectivity
    runtime_constant: float
    vqe_distance: int
    rae_distance: int
    vqe_physical_qubits: int
    rae_physical_qubits: int
    vqe_gate_error: float
    rae_gate_error: float
    crossover_gate_error: Optional[float]
    vqe_runtime: float
    rae_runtime: float
    rae_parallel_runtime: float
    runtime_ratio: float
    rae_layer_fidelity: float
    rae_layers: float
    rae_ansatz_queries: float

    @model_validator(mode="after")
    def _check_consistency(self) -> "RuntimePrediction":
        expected = self.vqe_runtime / self.rae_runtime
        # reports round floats to significant digits, so reloaded values differ slightly
        if abs(self.runtime_ratio - expected) > 1e-6 * abs(expected):
            raise ValueError("runtime_ratio must equal vqe_runtime / rae_runtime")
        if self.rae_parallel_runtime > self.rae_runtime * (1 + 1e-12):
            raise ValueError("Parallel RAE runtime cannot exceed the serial runtime")
        return self


def fitted_layer_counts(
    hamiltonians: Sequence[PauliHamiltonian], target_qubits: int, target_rmse: float
) -> LayerCountFunction:
    """
    Layer counts at ``target_qubits`` extrapolated from a series.

    At each layer noise λ the allocation of every Hamiltonian is priced in
    layers, and the totals and largest per-term counts are each fitted in N.
    """

    def counts(lam: float, p_bar: float) -> RaeLayerCounts:
        params = RuntimeModelParams.calibrated(NoiseModel(lam=lam, p_bar=p_bar), layer_time=1.0)
        totals, largest = [], []
        for hamiltonian in hamiltonians:
            allocation = allocate(hamiltonian, target_rmse, params)
            totals.append((hamiltonian.num_qubits, allocation.total_runtime))
            largest.append((hamiltonian.num_qubits, allocation.parallel_runtime))
        return RaeLayerCounts(
            total=extrapolate(fit_power_law(totals), target_qubits),
            largest=extrapolate(fit_power_law(largest), target_qubits),
        )

    return counts


def predict_label(series: LabeledSeries, config: ReportConfig, workers: Optional[int] = None) -> RuntimePrediction:
    """
    Predict optimal runtimes for one labelled series.

    Args:
        series: Hamiltonians of the system, any order, distinct qubit counts
        config: Report configuration
        workers: Worker threads for the distance sweep

    Returns:
        RuntimePrediction
    """
    if not series.hamiltonians:
        raise ConfigurationError(f"Series '{series.label}' has no Hamiltonians")
    hamiltonians = sorted(series.hamiltonians, key=lambda h: h.num_qubits)
    qubit_counts = [h.num_qubits for h in hamiltonians]
    if len(set(qubit_counts)) != len(qubit_counts):
        raise ConfigurationError(f"Series '{series.label}' repeats a qubit count: {qubit_counts}")

    if len(hamiltonians) == 1:
        hamiltonian = hamiltonians[0]
        target = hamiltonian.num_qubits
        if series.target_qubits is not None and series.target_qubits != target:
            logger.warning(
                f"Series '{series.label}' has a single Hamiltonian; reporting at N={target} "
                f"instead of N={series.target_qubits}"
            )
        runtime_constant = runtime_constant_K(hamiltonian)
        layer_counts = hamiltonian_layer_counts(hamiltonian, config.target_rmse)
        fitted = False
    else:
        target = series.target_qubits or qubit_counts[-1]
        k_fit = fit_power_law([(h.num_qubits, runtime_constant_K(h)) for h in hamiltonians])
        runtime_constant = extrapolate(k_fit, target)
        layer_counts = fitted_layer_counts(hamiltonians, target, config.target_rmse)
        fitted = True
        logger.info(
            f"Series '{series.label}': K ~ {k_fit.a:.4g} N^{k_fit.b:.4g} + {k_fit.c:.4g}, "
            f"extrapolated to N={target}"
        )

    points = sweep_from_scaling(
        num_qubits=target,
        runtime_constant=runtime_constant,
        layer_counts=layer_counts,
        target_rmse=config.target_rmse,
        connectivity=config.connectivity,
        params=config.surface_code,
        d_range=config.distances,
        p_bar=config.p_bar,
        min_layer_fidelity=config.min_layer_fidelity,
        workers=workers,
    )
    return prediction_from_sweep(series.label, points, config, fitted)


def prediction_from_sweep(
    label: str, points: Sequence[SweepPoint], config: ReportConfig, fitted: bool
) -> RuntimePrediction:
    """Summarize a sweep into a RuntimePrediction."""
    rae: SweepPoint = optimal_point(points, Method.RAE)
    vqe: SweepPoint = optimal_point(points, Method.VQE)

    return RuntimePrediction(
        label=label,
        logical_qubits=rae.logical_qubits,
        fitted=fitted,
        target_rmse=config.target_rmse,
        connectivity=config.connectivity,
        runtime_constant=vqe.runtime_constant,
        vqe_distance=vqe.distance,
        rae_distance=rae.distance,
        vqe_physical_qubits=vqe.physical_qubits,
        rae_physical_qubits=rae.physical_qubits,
        vqe_gate_error=vqe.gate_error,
        rae_gate_error=rae.gate_error,
        crossover_gate_error=crossover_error_rate(points),
        vqe_runtime=vqe.vqe_runtime,
        rae_runtime=rae.rae_runtime,
        rae_parallel_runtime=rae.rae_parallel_runtime,
        runtime_ratio=vqe.vqe_runtime / rae.rae_runtime,
        rae_layer_fidelity=rae.layer_fidelity,
        rae_layers=rae.rae_layers,
        rae_ansatz_queries=ansatz_queries(rae.rae_layers),
    )


def report_payload(predictions: Sequence[RuntimePrediction]) -> List[Dict[str, Any]]:
    """JSON-ready list of predictions."""
    return [prediction.model_dump(mode="json") for prediction in predictions]


def report_json_schema() -> Dict[str, Any]:
    """JSON schema of one report entry."""
    return RuntimePrediction.model_json_schema()
