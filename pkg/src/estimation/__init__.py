"""
Estimation Module

This module provides RAE likelihood models, grid-based Bayesian inference,
concurrent trial ensembles and validation of the runtime model against
simulation.
"""

from .bayesian_inference import (
    EnsembleCurve,
    GridPosterior,
    LayerPolicy,
    TrialConfig,
    TrialStep,
    TrialTrace,
    bayes_update,
    choose_layer_count,
    cost_to_reach,
    default_step_budget,
    ensemble_stats,
    init_prior,
    run_trial,
)
from .likelihood import (
    NoiseModel,
    PhasePoint,
    fisher_information,
    likelihood_noiseless,
    likelihood_noisy,
)
from .model_validation import fraction_within_envelope, validate_runtime_model
from .trial_runner import TrialRunner, run_ensemble, trial_seeds

__all__ = [
    "NoiseModel",
    "PhasePoint",
    "likelihood_noiseless",
    "likelihood_noisy",
    "fisher_information",
    "GridPosterior",
    "LayerPolicy",
    "TrialConfig",
    "TrialStep",
    "TrialTrace",
    "EnsembleCurve",
    "init_prior",
    "bayes_update",
    "choose_layer_count",
    "run_trial",
    "ensemble_stats",
    "cost_to_reach",
    "default_step_budget",
    "TrialRunner",
    "run_ensemble",
    "trial_seeds",
    "validate_runtime_model",
    "fraction_within_envelope",
]
