"""
raeperf Command-Line Interface

This module implements the command-line entry point of the toolkit.

Commands:
- simulate: RAE trial ensemble at one (Π, layer fidelity) setting
- validate-model: simulated inference cost against the runtime model
- allocate: per-term accuracy allocation for a Hamiltonian
- estimate: RAE and standard-sampling runtimes at one code distance
- sweep: both runtimes across code distances
- fit: power-law fit of (N, y) points
- report: end-to-end runtime predictions for labelled Hamiltonian series

Exit codes: 0 success, 1 usage or configuration error, 2 computational failure.
"""

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Type

import pandas as pd
from pydantic import ValidationError

from src.core.config import Settings, load_settings, read_config_file, use_settings
from src.core.exceptions import ConfigurationError, RaeToolkitError
from src.core.io_utils import atomic_write_text, frame_to_csv_text, to_json_text, write_frame_csv, write_json
from src.core.logging_config import configure_logging
from src.core.run_config import (
    AllocateConfig,
    EstimateConfig,
    FitConfig,
    ReportRunConfig,
    RunConfig,
    SimulateConfig,
    SweepConfig,
    ValidateModelConfig,
)
from src.estimation.bayesian_inference import LayerPolicy, TrialConfig, default_step_budget, ensemble_stats
from src.estimation.likelihood import NoiseModel
from src.estimation.model_validation import fraction_within_envelope, validate_runtime_model
from src.estimation.trial_runner import run_ensemble
from src.hamiltonians.hamiltonian_parser import load_hamiltonian
from src.prediction.pipeline_manager import build_report, load_series_file
from src.prediction.power_law import extrapolate, fit_power_law
from src.prediction.report import ReportConfig, report_payload
from src.prediction.sweep import Method, crossover_error_rate, optimal_point, sweep, sweep_to_frame
from src.resources.circuit_costs import circuit_costs, layer_decay, layer_time
from src.resources.fault_tolerance import SurfaceCodeParams, code_point, distance_for_error
from src.resources.runtime_model import (
    RuntimeModelParams,
    allocate,
    ansatz_queries,
    uniform_allocation_runtime,
)
from src.resources.standard_sampling import standard_runtime

logger = logging.getLogger(__name__)


class ToolkitArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as ConfigurationError."""

    def error(self, message: str):
        raise ConfigurationError(f"{self.prog}: {message}")


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--seed", type=int, help="Master random seed")
    parser.add_argument("--out", help="Output file (default: stdout where allowed)")
    parser.add_argument("--format", choices=["csv", "json"], help="Output format")
    parser.add_argument("--workers", type=int, help="Worker threads")
    parser.add_argument("--log-level", help="Log level (DEBUG, INFO, WARNING, ERROR)")


def _add_model_arguments(parser: argparse.ArgumentParser, with_costs: bool = True) -> None:
    parser.add_argument("--hamiltonian", help="Hamiltonian file (line format or JSON)")
    parser.add_argument("--target-rmse", type=float, help="Target energy RMSE")
    parser.add_argument("--p-bar", type=float, help="SPAM fidelity")
    if with_costs:
        parser.add_argument("--connectivity", choices=["2d", "a2a"], help="Hardware connectivity")
        parser.add_argument("--cycle-time", type=float, help="Surface-code cycle time in seconds")


def build_parser() -> ToolkitArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = ToolkitArgumentParser(prog="raeperf", description="Robust amplitude estimation resource toolkit")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text, argument_default=argparse.SUPPRESS)
        _add_common_arguments(sub)
        return sub

    simulate = add("simulate", "Simulate an ensemble of RAE trials")
    simulate.add_argument("--pi", type=float, help="True expectation value")
    simulate.add_argument("--layer-fidelity", type=float, help="Layer fidelity e^-lambda")
    simulate.add_argument("--p-bar", type=float, help="SPAM fidelity")
    simulate.add_argument("--trials", type=int, help="Number of trials")
    simulate.add_argument("--steps", type=int, help="Inference steps per trial")
    simulate.add_argument("--trim", type=float, help="Trim fraction")
    simulate.add_argument("--grid-points", type=int, help="Posterior grid size")
    simulate.add_argument("--max-layers", type=int, help="Cap on layers per step")

    validate = add("validate-model", "Compare simulated costs with the runtime model")
    validate.add_argument("--pi-grid", type=float, nargs="+", help="True expectation values")
    validate.add_argument("--fidelity-grid", type=float, nargs="+", help="Layer fidelities")
    validate.add_argument("--trials", type=int, help="Trials per setting")
    validate.add_argument("--trim", type=float, help="Trim fraction")
    validate.add_argument("--grid-points", type=int, help="Posterior grid size")
    validate.add_argument("--steps", type=int, help="Inference steps per trial")

    allocate_parser = add("allocate", "Allocate per-term accuracies")
    _add_model_arguments(allocate_parser)
    allocate_parser.add_argument("--layer-fidelity", type=float, help="Layer fidelity e^-lambda")
    allocate_parser.add_argument("--layer-time", type=float, help="Seconds per layer (default 1: layer units)")
    allocate_parser.add_argument("--distance", type=int, help="Derive noise from the cost models at this distance")

    estimate = add("estimate", "Estimate both methods at one code distance")
    _add_model_arguments(estimate)
    estimate.add_argument("--distance", type=int, help="Code distance")
    estimate.add_argument("--gate-error", type=float, help="Target logical gate error (picks the distance)")
    estimate.add_argument("--min-layer-fidelity", type=float, help="Lowest layer fidelity priced for RAE")

    sweep_parser = add("sweep", "Sweep both methods over code distances")
    _add_model_arguments(sweep_parser)
    sweep_parser.add_argument("--d-min", type=int, help="Smallest code distance")
    sweep_parser.add_argument("--d-max", type=int, help="Largest code distance")
    sweep_parser.add_argument("--min-layer-fidelity", type=float, help="Lowest layer fidelity priced for RAE")

    fit = add("fit", "Fit y = a N^b + c")
    fit.add_argument("--points", help="CSV file with columns n,y")
    fit.add_argument("--target-qubits", type=int, help="Extrapolate to this qubit count")

    report = add("report", "Predict runtimes for labelled Hamiltonian series")
    report.add_argument("--series", help="Series JSON file")
    report.add_argument("--target-rmse", type=float, help="Target energy RMSE")
    report.add_argument("--connectivity", choices=["2d", "a2a"], help="Hardware connectivity")
    report.add_argument("--cycle-time", type=float, help="Surface-code cycle time in seconds")
    report.add_argument("--d-min", type=int, help="Smallest code distance")
    report.add_argument("--d-max", type=int, help="Largest code distance")
    report.add_argument("--p-bar", type=float, help="SPAM fidelity")
    report.add_argument("--min-layer-fidelity", type=float, help="Lowest layer fidelity priced for RAE")

    return parser


COMMAND_CONFIGS: Dict[str, Type[RunConfig]] = {
    "simulate": SimulateConfig,
    "validate-model": ValidateModelConfig,
    "allocate": AllocateConfig,
    "estimate": EstimateConfig,
    "sweep": SweepConfig,
    "fit": FitConfig,
    "report": ReportRunConfig,
}


def resolve_config(command: str, cli_values: Dict[str, Any]) -> Tuple[Settings, RunConfig]:
    """
    Merge config-file values with command-line flags and validate them.

    Args:
        command: Command name
        cli_values: Flags given on the command line (``--config`` included)

    Returns:
        Active settings and the validated run configuration
    """
    cli_values = dict(cli_values)
    config_path = cli_values.pop("config", None)
    file_values = read_config_file(config_path) if config_path else {}

    settings = use_settings(load_settings(config_path))
    model = COMMAND_CONFIGS[command]

    # settings-only keys configure defaults; anything else must be a command option
    values = {
        key: value
        for key, value in file_values.items()
        if key in model.model_fields or key not in Settings.model_fields
    }
    values.update(cli_values)
    return settings, model.model_validate(values)


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)


def _render(frame: pd.DataFrame, payload: Any, fmt: str) -> str:
    return frame_to_csv_text(frame) if fmt == "csv" else to_json_text(payload)


def ensemble_path(out: Path) -> Path:
    """Path of the ensemble CSV written next to a traces file."""
    return out.with_name(f"{out.stem}_ensemble{out.suffix or '.csv'}")


class CommandRunner:
    """Runs one validated command."""

    def __init__(self, config: RunConfig):
        self.config = config

    def run(self, command: str) -> None:
        handler = getattr(self, "run_" + command.replace("-", "_"))
        logger.info(f"Running {command}")
        handler()

    def run_simulate(self) -> None:
        c: SimulateConfig = self.config
        noise = NoiseModel.from_layer_fidelity(c.layer_fidelity, p_bar=c.p_bar)
        trial_config = TrialConfig(
            true_pi=c.pi,
            noise=noise,
            max_steps=c.steps or default_step_budget(c.layer_fidelity),
            seed=c.seed,
            grid_points=c.grid_points,
            layer_policy=LayerPolicy(max_layers=c.max_layers),
        )
        traces = run_ensemble(trial_config, c.trials, workers=c.workers)
        curve = ensemble_stats(traces, c.trim)

        trace_frame = pd.concat(
            [trace.to_frame().assign(trial=index) for index, trace in enumerate(traces)], ignore_index=True
        )
        trace_frame = trace_frame[["trial"] + [col for col in trace_frame.columns if col != "trial"]]
        ensemble_frame = curve.to_frame()

        if c.format == "csv":
            write_frame_csv(trace_frame, c.out)
            write_frame_csv(ensemble_frame, ensemble_path(c.out))
        else:
            write_json(
                {
                    "traces": trace_frame.to_dict(orient="records"),
                    "ensemble": ensemble_frame.to_dict(orient="records"),
                },
                c.out,
            )
        logger.info(
            f"Final trimmed MSE {curve.trimmed_mse[-1]:.3e} after {curve.mean_cum_layers[-1]:.6g} layers on average"
        )

    def run_validate_model(self) -> None:
        c: ValidateModelConfig = self.config
        frame = validate_runtime_model(
            pi_grid=c.pi_grid,
            fidelity_grid=c.fidelity_grid,
            trials=c.trials,
            trim_fraction=c.trim,
            seed=c.seed,
            grid_points=c.grid_points,
            workers=c.workers,
            max_steps=c.steps,
        )
        _emit(_render(frame, frame.to_dict(orient="records"), c.format), c.out)
        total = len(c.pi_grid) * len(c.fidelity_grid)
        logger.info(f"{fraction_within_envelope(frame, total_settings=total):.0%} of settings within a factor of 4")

    def run_allocate(self) -> None:
        c: AllocateConfig = self.config
        hamiltonian = load_hamiltonian(c.hamiltonian)
        if c.layer_fidelity is not None:
            noise = NoiseModel.from_layer_fidelity(c.layer_fidelity, p_bar=c.p_bar)
            tau = c.layer_time
        else:
            costs = circuit_costs(hamiltonian.num_qubits, c.connectivity)
            code = code_point(c.distance, SurfaceCodeParams(cycle_time=c.cycle_time))
            noise = layer_decay(costs, code.logical_gate_error, p_bar=c.p_bar)
            tau = layer_time(costs, code.logical_gate_time)

        params = RuntimeModelParams.calibrated(noise, tau)
        result = allocate(hamiltonian, c.target_rmse, params)
        uniform = uniform_allocation_runtime(hamiltonian, c.target_rmse, params)

        payload = {
            "multiplier": result.multiplier,
            "total_runtime": result.total_runtime,
            "parallel_runtime": result.parallel_runtime,
            "uniform_runtime": uniform,
            "total_layers": result.total_layers,
            "layer_fidelity": noise.layer_fidelity,
            "terms": [
                {"pauli": label, "mu": float(mu), "epsilon_i": float(eps), "T_i_seconds": float(t)}
                for label, mu, eps, t in zip(result.labels, result.coefficients, result.epsilons, result.term_runtimes)
            ],
        }
        _emit(_render(result.to_frame(), payload, c.format), c.out)
        if c.out is not None:
            print(f"Lambda: {result.multiplier:.9g}")
            print(f"T_total: {result.total_runtime:.9g}")
            print(f"T_parallel: {result.parallel_runtime:.9g}")
            print(f"T_uniform: {uniform:.9g}")

    def run_estimate(self) -> None:
        c: EstimateConfig = self.config
        hamiltonian = load_hamiltonian(c.hamiltonian)
        params = c.surface_code()
        distance = c.distance if c.distance is not None else distance_for_error(c.gate_error, params).distance

        point = sweep(
            hamiltonian, c.target_rmse, c.connectivity, params, [distance],
            p_bar=c.p_bar, min_layer_fidelity=c.min_layer_fidelity, workers=1,
        )[0]
        costs = circuit_costs(hamiltonian.num_qubits, c.connectivity)
        vqe = standard_runtime(hamiltonian, c.target_rmse, costs, code_point(distance, params))

        row = asdict(point)
        row.update(
            {
                "shots": vqe.shots,
                "mitigation_overhead": vqe.mitigation_overhead,
                "shot_time": vqe.shot_time,
                "rae_ansatz_queries": ansatz_queries(point.rae_layers),
            }
        )
        _emit(_render(pd.DataFrame([row]), row, c.format), c.out)

    def run_sweep(self) -> None:
        c: SweepConfig = self.config
        hamiltonian = load_hamiltonian(c.hamiltonian)
        points = sweep(
            hamiltonian, c.target_rmse, c.connectivity, c.surface_code(), range(c.d_min, c.d_max + 1),
            p_bar=c.p_bar, min_layer_fidelity=c.min_layer_fidelity, workers=c.workers,
        )
        frame = sweep_to_frame(points)
        summary: Dict[str, Any] = {"crossover_gate_error": crossover_error_rate(points)}
        for method in Method:
            try:
                best = optimal_point(points, method)
                summary[f"{method.value}_optimal_distance"] = best.distance
                logger.info(f"{method.value}: optimum {best.runtime(method):.4g}s at d={best.distance}")
            except ConfigurationError as e:
                summary[f"{method.value}_optimal_distance"] = None
                logger.warning(str(e))

        _emit(_render(frame, {"points": frame.to_dict(orient="records"), **summary}, c.format), c.out)

    def run_fit(self) -> None:
        c: FitConfig = self.config
        if not c.points.exists():
            raise ConfigurationError(f"Points file not found: {c.points}")
        try:
            data = pd.read_csv(c.points)
        except ValueError as e:
            raise ConfigurationError(f"Points file {c.points} is not valid CSV: {e}") from e
        data.columns = [str(col).strip().lower() for col in data.columns]
        if not {"n", "y"} <= set(data.columns):
            raise ConfigurationError(f"Points file needs columns n,y; found {list(data.columns)}")
        try:
            points = list(zip(data["n"].astype(float), data["y"].astype(float)))
        except ValueError as e:
            raise ConfigurationError(f"Points file {c.points} has non-numeric values: {e}") from e

        fit = fit_power_law(points)
        payload = fit.model_dump()
        if c.target_qubits is not None:
            payload["target_qubits"] = c.target_qubits
            payload["extrapolated"] = extrapolate(fit, c.target_qubits)
        _emit(_render(pd.DataFrame([payload]), payload, c.format), c.out)

    def run_report(self) -> None:
        c: ReportRunConfig = self.config
        series = load_series_file(c.series)
        report_config = ReportConfig(
            target_rmse=c.target_rmse,
            connectivity=c.connectivity,
            surface_code=SurfaceCodeParams(cycle_time=c.cycle_time),
            d_min=c.d_min,
            d_max=c.d_max,
            p_bar=c.p_bar,
            min_layer_fidelity=c.min_layer_fidelity,
        )
        payload = report_payload(build_report(series, report_config, workers=c.workers))
        _emit(_render(pd.DataFrame(payload), payload, c.format), c.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    configure_logging("WARNING")
    try:
        args = build_parser().parse_args(argv)
        cli_values = {key: value for key, value in vars(args).items() if key != "command"}
        settings, config = resolve_config(args.command, cli_values)
        configure_logging(config.log_level, json_logs=config.json_logs or settings.json_logs)
        CommandRunner(config).run(args.command)
    except ValidationError as e:
        logger.error(f"Invalid configuration: {e}")
        return 1
    except RaeToolkitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected failure: {str(e)}")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
