"""
raeperf - Run Configuration Models

Per-command configuration models for the command-line interface. Values
come from an optional JSON config file overridden by command-line flags;
unknown keys are rejected and ranges are validated before any computation
starts.
"""

from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.config import get_settings
from src.resources.circuit_costs import Connectivity
from src.resources.fault_tolerance import SurfaceCodeParams


class RunConfig(BaseModel):
    """Options shared by every command."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int = Field(0, ge=0)
    out: Optional[Path] = None
    format: Literal["csv", "json"] = "csv"
    workers: Optional[int] = Field(None, ge=1)
    log_level: str = Field(default_factory=lambda: get_settings().log_level)
    json_logs: bool = False


class SimulateConfig(RunConfig):
    """simulate: RAE trial ensemble at one (Π, fidelity) setting."""

    out: Path
    pi: float = Field(ge=-1, le=1)
    layer_fidelity: float = Field(gt=0, le=1)
    p_bar: float = Field(1.0, gt=0, le=1)
    trials: int = Field(default_factory=lambda: get_settings().trials, ge=1)
    steps: Optional[int] = Field(None, ge=1)
    trim: float = Field(default_factory=lambda: get_settings().trim_fraction, ge=0, lt=1)
    grid_points: int = Field(default_factory=lambda: get_settings().grid_points, ge=3)
    max_layers: Optional[int] = Field(None, ge=0)


class ValidateModelConfig(RunConfig):
    """validate-model: simulated cost against the runtime model over a grid."""

    out: Path
    pi_grid: List[float] = Field(default_factory=lambda: [0.0, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9], min_length=1)
    fidelity_grid: List[float] = Field(default_factory=lambda: [0.9, 0.99, 0.999], min_length=1)
    trials: int = Field(default_factory=lambda: get_settings().trials, ge=1)
    trim: float = Field(default_factory=lambda: get_settings().trim_fraction, ge=0, lt=1)
    grid_points: int = Field(default_factory=lambda: get_settings().validation_grid_points, ge=3)
    steps: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _check_grids(self) -> "ValidateModelConfig":
        if any(not -1.0 <= pi <= 1.0 for pi in self.pi_grid):
            raise ValueError("pi_grid values must lie in [-1, 1]")
        if any(not 0.0 < f <= 1.0 for f in self.fidelity_grid):
            raise ValueError("fidelity_grid values must lie in (0, 1]")
        return self


class HamiltonianRunConfig(RunConfig):
    """Options of commands that read a Hamiltonian."""

    hamiltonian: Path
    target_rmse: float = Field(default_factory=lambda: get_settings().target_rmse, gt=0)
    p_bar: float = Field(1.0, gt=0, le=1)


class CostModelRunConfig(HamiltonianRunConfig):
    """Options of commands that price circuits on a surface code."""

    connectivity: Connectivity = Connectivity.ALL_TO_ALL
    cycle_time: float = Field(default_factory=lambda: get_settings().cycle_time, gt=0)
    min_layer_fidelity: float = Field(default_factory=lambda: get_settings().min_layer_fidelity, gt=0, le=1)

    def surface_code(self) -> SurfaceCodeParams:
        return SurfaceCodeParams(cycle_time=self.cycle_time)


class AllocateConfig(HamiltonianRunConfig):
    """allocate: per-term accuracy allocation.

    The layer noise comes either from ``layer_fidelity`` directly or from
    the circuit and surface-code models at ``distance``.
    """

    layer_fidelity: Optional[float] = Field(None, gt=0, le=1)
    layer_time: float = Field(1.0, gt=0)
    distance: Optional[int] = Field(None, ge=3)
    connectivity: Connectivity = Connectivity.ALL_TO_ALL
    cycle_time: float = Field(default_factory=lambda: get_settings().cycle_time, gt=0)

    @model_validator(mode="after")
    def _check_noise_source(self) -> "AllocateConfig":
        if (self.layer_fidelity is None) == (self.distance is None):
            raise ValueError("Give exactly one of layer_fidelity or distance")
        return self


class EstimateConfig(CostModelRunConfig):
    """estimate: both methods at one code distance."""

    distance: Optional[int] = Field(None, ge=3)
    gate_error: Optional[float] = Field(None, gt=0, lt=1)

    @model_validator(mode="after")
    def _check_distance_source(self) -> "EstimateConfig":
        if (self.distance is None) == (self.gate_error is None):
            raise ValueError("Give exactly one of distance or gate_error")
        return self


class SweepConfig(CostModelRunConfig):
    """sweep: both methods across code distances."""

    d_min: int = Field(3, ge=3)
    d_max: int = Field(default_factory=lambda: get_settings().max_distance, ge=3)

    @model_validator(mode="after")
    def _check_range(self) -> "SweepConfig":
        if self.d_max < self.d_min:
            raise ValueError(f"d_max ({self.d_max}) must not be below d_min ({self.d_min})")
        return self


class FitConfig(RunConfig):
    """fit: power-law fit of (N, y) points."""

    points: Path
    target_qubits: Optional[int] = Field(None, ge=1)
    format: Literal["csv", "json"] = "json"


class ReportRunConfig(RunConfig):
    """report: end-to-end runtime predictions for labelled series."""

    series: Path
    target_rmse: float = Field(default_factory=lambda: get_settings().target_rmse, gt=0)
    connectivity: Connectivity = Connectivity.ALL_TO_ALL
    cycle_time: float = Field(default_factory=lambda: get_settings().cycle_time, gt=0)
    d_min: int = Field(3, ge=3)
    d_max: Optional[int] = Field(None, ge=3)
    p_bar: float = Field(1.0, gt=0, le=1)
    min_layer_fidelity: float = Field(default_factory=lambda: get_settings().min_layer_fidelity, gt=0, le=1)
    format: Literal["csv", "json"] = "json"
