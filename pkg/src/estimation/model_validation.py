"""
Runtime Model Validation

This module compares simulated RAE inference costs with the closed-form
runtime model over a grid of (Π, layer fidelity) settings.

For every setting an ensemble of trials is simulated, and at a few target
accuracies ε inside the mid-accuracy window the simulated mean layer cost to
reach trimmed MSE ε² is compared with the model t(ε). The window runs from
ten grid spacings up to the Π-space width of the configured prior, σ·sin θ.
The model counts layers from no prior knowledge, so validation trials start
from a uniform prior and get extra steps for the ramp-up.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError
from src.estimation.bayesian_inference import (
    TrialConfig,
    cost_to_reach,
    default_step_budget,
    ensemble_stats,
    theta_grid,
)
from src.estimation.likelihood import NoiseModel
from src.estimation.trial_runner import TrialRunner, trial_seeds
from src.resources.runtime_model import runtime_model

logger = logging.getLogger(__name__)

DEFAULT_PI_GRID = (0.0, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9)
DEFAULT_FIDELITY_GRID = (0.9, 0.99, 0.999)

# inference steps added to the per-fidelity budget for leaving the uniform prior
RAMP_UP_STEPS = 100

VALIDATION_COLUMNS = [
    "pi",
    "layer_fidelity",
    "epsilon",
    "simulated_layers",
    "model_layers",
    "ratio",
]


@dataclass(frozen=True)
class AccuracyWindow:
    """Mid-accuracy range of Π-space RMSE for one setting."""

    low: float
    high: float

    def targets(self, count: int) -> List[float]:
        """``count`` log-spaced accuracies strictly inside the window, coarsest first."""
        return [self.high * (self.low / self.high) ** (k / (count + 1)) for k in range(1, count + 1)]


def accuracy_window(true_pi: float, prior_sd: float, grid_points: int) -> Optional[AccuracyWindow]:
    """Mid-accuracy window for a setting, or None when it is empty."""
    spacing = float(theta_grid(grid_points)[1])
    low = 10.0 * spacing
    high = prior_sd * math.sqrt(max(1.0 - true_pi ** 2, 0.0))
    if high <= low:
        return None
    return AccuracyWindow(low=low, high=high)


def validate_setting(
    true_pi: float,
    layer_fidelity: float,
    trials: int,
    trim_fraction: float,
    seed: int,
    grid_points: int,
    runner: TrialRunner,
    max_steps: Optional[int] = None,
    accuracy_points: int = 3,
) -> pd.DataFrame:
    """
    Simulate one setting and compare with the runtime model.

    Returns:
        Rows of VALIDATION_COLUMNS, one per reached target accuracy
    """
    noise = NoiseModel.from_layer_fidelity(layer_fidelity)
    config = TrialConfig(
        true_pi=true_pi,
        noise=noise,
        max_steps=max_steps or default_step_budget(layer_fidelity) + RAMP_UP_STEPS,
        seed=seed,
        grid_points=grid_points,
        prior_kind="uniform",
    )
    window = accuracy_window(true_pi, config.prior_sd, grid_points)
    if window is None:
        logger.warning(f"Empty accuracy window for pi={true_pi}, skipping")
        return pd.DataFrame(columns=VALIDATION_COLUMNS, dtype=float)

    curve = ensemble_stats(runner.run_ensemble(config, trials), trim_fraction)
    rows = []
    for epsilon in window.targets(accuracy_points):
        simulated = cost_to_reach(curve, epsilon ** 2)
        if simulated is None:
            logger.warning(
                f"pi={true_pi}, fidelity={layer_fidelity}: accuracy {epsilon:.3e} not reached "
                f"in {config.max_steps} steps"
            )
            continue
        model = runtime_model(epsilon, noise)
        rows.append(
            {
                "pi": true_pi,
                "layer_fidelity": layer_fidelity,
                "epsilon": epsilon,
                "simulated_layers": simulated,
                "model_layers": model,
                "ratio": simulated / model,
            }
        )
    return pd.DataFrame(rows, columns=VALIDATION_COLUMNS, dtype=float)


def validate_runtime_model(
    pi_grid: Sequence[float] = DEFAULT_PI_GRID,
    fidelity_grid: Sequence[float] = DEFAULT_FIDELITY_GRID,
    trials: Optional[int] = None,
    trim_fraction: Optional[float] = None,
    seed: int = 0,
    grid_points: Optional[int] = None,
    workers: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> pd.DataFrame:
    """
    Validate the runtime model over a (Π, fidelity) grid.

    Args:
        pi_grid: True expectation values
        fidelity_grid: Layer fidelities e^{-λ}
        trials: Trials per setting (default from settings)
        trim_fraction: Trim fraction (default from settings)
        seed: Master seed; each setting gets a seed derived from it
        grid_points: Posterior grid size (default: settings.validation_grid_points)
        workers: Worker threads
        max_steps: Steps per trial (default: default_step_budget per fidelity plus RAMP_UP_STEPS)

    Returns:
        DataFrame with VALIDATION_COLUMNS, grouped by setting in grid order
    """
    settings = get_settings()
    trials = trials or settings.trials
    trim_fraction = settings.trim_fraction if trim_fraction is None else trim_fraction
    grid_points = grid_points or settings.validation_grid_points
    if len(pi_grid) == 0 or len(fidelity_grid) == 0:
        raise ConfigurationError("Validation grids must not be empty")

    runner = TrialRunner(max_workers=workers)
    settings_list = [(pi, fidelity) for fidelity in fidelity_grid for pi in pi_grid]
    seeds = trial_seeds(seed, len(settings_list))

    frames = []
    for (pi, fidelity), setting_seed in zip(settings_list, seeds):
        frames.append(
            validate_setting(
                pi, fidelity, trials, trim_fraction, setting_seed, grid_points, runner, max_steps=max_steps
            )
        )
    result = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=VALIDATION_COLUMNS, dtype=float)
    logger.info(f"Validated runtime model on {len(settings_list)} settings ({len(result)} rows)")
    return result


def fraction_within_envelope(frame: pd.DataFrame, factor: float = 4.0, total_settings: Optional[int] = None) -> float:
    """
    Fraction of settings whose median ratio lies within [1/factor, factor].

    Args:
        frame: Output of validate_runtime_model
        factor: Envelope half-width as a multiplicative factor
        total_settings: Number of settings run; settings without rows count as outside

    Returns:
        Fraction in [0, 1]
    """
    medians = frame.groupby(["pi", "layer_fidelity"], sort=False)["ratio"].median()
    total = total_settings or len(medians)
    if total == 0:
        return 0.0
    inside = int(np.sum((medians >= 1.0 / factor) & (medians <= factor)))
    return inside / total
