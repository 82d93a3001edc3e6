"""
Code-Distance Sweep

This module evaluates RAE and standard-sampling (VQE) runtimes across a
range of surface-code distances. At each distance the logical gate error
and time fix the RAE layer decay λ and layer time τ_l; the runtime model
then prices an optimally allocated RAE energy estimate while the
standard-sampling model prices the VQE baseline.

The runtime model is only trusted for layer fidelities e^{-λ} at or above
``min_layer_fidelity``; below it RAE is reported as infeasible (infinite
runtime).
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence

import pandas as pd

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError
from src.estimation.likelihood import NoiseModel
from src.hamiltonians.pauli_hamiltonian import PauliHamiltonian
from src.resources.circuit_costs import CircuitCosts, Connectivity, circuit_costs, layer_decay, layer_time
from src.resources.fault_tolerance import CodePoint, SurfaceCodeParams, code_point, physical_qubits
from src.resources.runtime_model import RuntimeModelParams, allocate
from src.resources.standard_sampling import runtime_constant_K, standard_runtime_from_K

logger = logging.getLogger(__name__)


class Method(str, Enum):
    """Energy-estimation method."""

    RAE = "rae"
    VQE = "vqe"


@dataclass(frozen=True)
class SweepPoint:
    """Runtimes of both methods at one code distance."""

    distance: int
    gate_error: float
    gate_time: float
    lam: float
    layer_fidelity: float
    layer_time: float
    rae_valid: bool
    rae_layers: float
    rae_max_layers: float
    rae_runtime: float
    rae_parallel_runtime: float
    vqe_runtime: float
    runtime_constant: float
    logical_qubits: int
    physical_qubits: int

    def runtime(self, method: Method) -> float:
        return self.rae_runtime if Method(method) is Method.RAE else self.vqe_runtime


@dataclass(frozen=True)
class RaeLayerCounts:
    """Total and largest per-term layer counts of an allocation."""

    total: float
    largest: float


# maps (layer noise λ, p̄) at one distance to RAE layer counts
LayerCountFunction = Callable[[float, float], RaeLayerCounts]

SWEEP_COLUMNS = {
    "distance": "d",
    "gate_error": "gate_error",
    "gate_time": "gate_time_s",
    "lam": "lambda",
    "layer_time": "tau_l_s",
    "rae_runtime": "rae_runtime_s",
    "vqe_runtime": "vqe_runtime_s",
}


def hamiltonian_layer_counts(hamiltonian: PauliHamiltonian, target_rmse: float) -> LayerCountFunction:
    """Layer counts from a direct allocation on ``hamiltonian``."""

    def counts(lam: float, p_bar: float) -> RaeLayerCounts:
        params = RuntimeModelParams.calibrated(NoiseModel(lam=lam, p_bar=p_bar), layer_time=1.0)
        allocation = allocate(hamiltonian, target_rmse, params)
        return RaeLayerCounts(total=allocation.total_runtime, largest=allocation.parallel_runtime)

    return counts


def sweep_point(
    distance: int,
    num_qubits: int,
    runtime_constant: float,
    layer_counts: LayerCountFunction,
    target_rmse: float,
    connectivity: Connectivity,
    params: SurfaceCodeParams,
    p_bar: float = 1.0,
    min_layer_fidelity: Optional[float] = None,
) -> SweepPoint:
    """Evaluate both methods at one code distance."""
    min_layer_fidelity = get_settings().min_layer_fidelity if min_layer_fidelity is None else min_layer_fidelity
    code: CodePoint = code_point(distance, params)
    costs: CircuitCosts = circuit_costs(num_qubits, connectivity)

    noise = layer_decay(costs, code.logical_gate_error, p_bar=p_bar)
    tau = layer_time(costs, code.logical_gate_time)
    valid = noise.layer_fidelity >= min_layer_fidelity

    if valid:
        counts = layer_counts(noise.lam, p_bar)
        rae_layers, rae_max_layers = counts.total, min(counts.largest, counts.total)
        rae_runtime, rae_parallel = tau * rae_layers, tau * rae_max_layers
    else:
        rae_layers = rae_max_layers = rae_runtime = rae_parallel = math.inf

    vqe = standard_runtime_from_K(runtime_constant, target_rmse, costs, code)

    return SweepPoint(
        distance=distance,
        gate_error=code.logical_gate_error,
        gate_time=code.logical_gate_time,
        lam=noise.lam,
        layer_fidelity=noise.layer_fidelity,
        layer_time=tau,
        rae_valid=valid,
        rae_layers=rae_layers,
        rae_max_layers=rae_max_layers,
        rae_runtime=rae_runtime,
        rae_parallel_runtime=rae_parallel,
        vqe_runtime=vqe.total_runtime,
        runtime_constant=runtime_constant,
        logical_qubits=num_qubits,
        physical_qubits=physical_qubits(num_qubits, distance),
    )


def _check_range(d_range: Sequence[int]) -> List[int]:
    distances = sorted(set(int(d) for d in d_range))
    if not distances:
        raise ConfigurationError("Distance range is empty")
    if distances[0] < 3:
        raise ConfigurationError(f"Code distances must be at least 3, got {distances[0]}")
    return distances


def sweep_from_scaling(
    num_qubits: int,
    runtime_constant: float,
    layer_counts: LayerCountFunction,
    target_rmse: float,
    connectivity: Connectivity,
    params: SurfaceCodeParams,
    d_range: Sequence[int],
    p_bar: float = 1.0,
    min_layer_fidelity: Optional[float] = None,
    workers: Optional[int] = None,
) -> List[SweepPoint]:
    """
    Sweep from per-N quantities (K and a layer-count function of λ).

    Used both for direct sweeps and for sweeps at an extrapolated qubit
    count where K and layer counts come from power-law fits.

    Returns:
        Sweep points in ascending distance order
    """
    distances = _check_range(d_range)

    def evaluate(distance: int) -> SweepPoint:
        return sweep_point(
            distance, num_qubits, runtime_constant, layer_counts, target_rmse,
            connectivity, params, p_bar=p_bar, min_layer_fidelity=min_layer_fidelity,
        )

    max_workers = workers or get_settings().max_workers
    if max_workers == 1:
        points = [evaluate(d) for d in distances]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            points = list(executor.map(evaluate, distances))

    logger.info(
        f"Swept d={distances[0]}..{distances[-1]} at N={num_qubits} ({Connectivity(connectivity).value}), "
        f"{sum(p.rae_valid for p in points)} points within the RAE model range"
    )
    return points


def sweep(
    hamiltonian: PauliHamiltonian,
    target_rmse: float,
    connectivity: Connectivity,
    params: Optional[SurfaceCodeParams],
    d_range: Sequence[int],
    p_bar: float = 1.0,
    min_layer_fidelity: Optional[float] = None,
    workers: Optional[int] = None,
) -> List[SweepPoint]:
    """
    Evaluate RAE and VQE runtimes for ``hamiltonian`` over code distances.

    Args:
        hamiltonian: Hamiltonian on an even number (≥ 4) of qubits
        target_rmse: Target energy RMSE ε̄
        connectivity: Hardware connectivity
        params: Surface-code parameters (defaults from settings)
        d_range: Code distances to evaluate
        p_bar: SPAM fidelity
        min_layer_fidelity: Lowest layer fidelity at which RAE is priced
        workers: Worker threads

    Returns:
        Sweep points in ascending distance order
    """
    return sweep_from_scaling(
        num_qubits=hamiltonian.num_qubits,
        runtime_constant=runtime_constant_K(hamiltonian),
        layer_counts=hamiltonian_layer_counts(hamiltonian, target_rmse),
        target_rmse=target_rmse,
        connectivity=connectivity,
        params=params or SurfaceCodeParams(),
        d_range=d_range,
        p_bar=p_bar,
        min_layer_fidelity=min_layer_fidelity,
        workers=workers,
    )


def optimal_point(points: Sequence[SweepPoint], method: Method) -> SweepPoint:
    """Point of minimum runtime for ``method``; ties go to the smaller distance."""
    if not points:
        raise ConfigurationError("Sweep is empty")
    method = Method(method)
    best = min(points, key=lambda p: (p.runtime(method), p.distance))
    if not math.isfinite(best.runtime(method)):
        raise ConfigurationError(f"No point of the sweep has a finite {method.value} runtime")
    return best


def crossover_error_rate(points: Sequence[SweepPoint]) -> Optional[float]:
    """
    Largest gate error at which RAE beats VQE there and at every lower error.

    Returns None when RAE does not win at the lowest swept error.
    """
    crossover = None
    for point in sorted(points, key=lambda p: p.gate_error):
        if point.rae_runtime < point.vqe_runtime:
            crossover = point.gate_error
        else:
            break
    return crossover


def sweep_to_frame(points: Sequence[SweepPoint]) -> pd.DataFrame:
    """Sweep points as a DataFrame, one row per distance, unit-suffixed column names first."""
    frame = pd.DataFrame([asdict(point) for point in points]).rename(columns=SWEEP_COLUMNS)
    frame["rae_physical_qubits"] = frame["physical_qubits"]
    frame["vqe_physical_qubits"] = frame.pop("physical_qubits")
    leading = list(SWEEP_COLUMNS.values()) + ["rae_physical_qubits", "vqe_physical_qubits"]
    return frame[leading + [col for col in frame.columns if col not in leading]]
