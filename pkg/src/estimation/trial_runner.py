"""
Trial Runner

This module implements the TrialRunner class for running ensembles of
independent RAE trials concurrently. Trial i always receives the seed
derived from (master seed, i), and results are returned in trial order, so
an ensemble is independent of how the executor schedules its trials.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError
from src.estimation.bayesian_inference import TrialConfig, TrialTrace, run_trial

logger = logging.getLogger(__name__)


def trial_seeds(master_seed: int, trials: int) -> List[int]:
    """Per-trial seeds derived from a master seed, keyed by trial index."""
    children = np.random.SeedSequence(master_seed).spawn(trials)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


class TrialRunner:
    """Runs ensembles of simulated RAE trials."""

    def __init__(self, max_workers: Optional[int] = None):
        """
        Initialize TrialRunner.

        Args:
            max_workers: Worker threads (default from settings)
        """
        self.max_workers = max_workers or get_settings().max_workers

    def run_ensemble(self, config: TrialConfig, trials: int) -> List[TrialTrace]:
        """
        Run ``trials`` independent trials of ``config``.

        Args:
            config: Base trial configuration; its seed is the master seed
            trials: Number of trials

        Returns:
            Traces in trial-index order
        """
        if trials < 1:
            raise ConfigurationError(f"Trial count must be positive, got {trials}")

        configs = [config.model_copy(update={"seed": seed}) for seed in trial_seeds(config.seed, trials)]
        started = time.perf_counter()

        if self.max_workers == 1 or trials == 1:
            traces = [run_trial(trial_config) for trial_config in configs]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                # map preserves submission order
                traces = list(executor.map(run_trial, configs))

        logger.info(
            f"Ran {trials} trials (pi={config.true_pi}, fidelity={config.noise.layer_fidelity:.6g}, "
            f"steps={config.max_steps}) in {time.perf_counter() - started:.2f}s"
        )
        return traces


def run_ensemble(config: TrialConfig, trials: int, workers: Optional[int] = None) -> List[TrialTrace]:
    """Run an ensemble of trials; see TrialRunner.run_ensemble."""
    return TrialRunner(max_workers=workers).run_ensemble(config, trials)
