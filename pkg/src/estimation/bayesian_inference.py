"""
Bayesian Inference

This module implements grid-based Bayesian inference of the RAE phase θ:

1. Truncated-Gaussian prior on a uniform θ-grid over [0, π]
2. Pure Bayes updates from single-shot Chebyshev likelihoods
3. Fisher-information-per-cost layer selection
4. Single-trial simulation with full per-step traces
5. Trimmed ensemble statistics over many trials
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field
from scipy.stats import norm

from src.core.config import get_settings
from src.core.exceptions import ComputationError, ConfigurationError
from src.estimation.likelihood import NoiseModel, fisher_information, likelihood_noisy

logger = logging.getLogger(__name__)

MIN_EVIDENCE = 1e-300


class LayerPolicy(BaseModel):
    """How each step picks its layer count.

    ``fisher_per_time`` maximizes Fisher information per layer of cost;
    ``fixed`` always uses ``fixed_layers`` (L = 0 is standard sampling).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["fisher_per_time", "fixed"] = "fisher_per_time"
    fixed_layers: int = Field(0, ge=0)
    max_layers: Optional[int] = Field(None, ge=0)


class TrialConfig(BaseModel):
    """Parameters of one simulated RAE trial."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    true_pi: float = Field(ge=-1, le=1)
    noise: NoiseModel = Field(default_factory=NoiseModel)
    prior_sd: float = Field(default_factory=lambda: get_settings().prior_sd, gt=0)
    prior_mean_jitter_sd: float = Field(default_factory=lambda: get_settings().prior_mean_jitter_sd, ge=0)
    prior_kind: Literal["gaussian", "uniform"] = "gaussian"
    max_steps: int = Field(ge=1)
    seed: int = 0
    layer_policy: LayerPolicy = Field(default_factory=LayerPolicy)
    grid_points: int = Field(default_factory=lambda: get_settings().grid_points, ge=3)

    @property
    def true_theta(self) -> float:
        return math.acos(self.true_pi)


def theta_grid(grid_points: int) -> np.ndarray:
    """Uniform grid of ``grid_points`` nodes over [0, π]."""
    return np.linspace(0.0, math.pi, grid_points)


def trapezoid_weights(grid_points: int) -> np.ndarray:
    """Trapezoid quadrature weights on the unit-spaced grid."""
    weights = np.ones(grid_points)
    weights[0] = weights[-1] = 0.5
    return weights


@dataclass(frozen=True, eq=False)
class GridPosterior:
    """Posterior over θ as probability masses on a uniform grid (masses sum to 1)."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ConfigurationError("Posterior nodes and weights must be 1-d arrays of equal length")
        self.nodes.flags.writeable = False
        self.weights.flags.writeable = False

    @classmethod
    def from_density(cls, nodes: np.ndarray, log_density: np.ndarray) -> "GridPosterior":
        """Normalize an unnormalized log-density into grid masses."""
        log_mass = log_density + np.log(trapezoid_weights(nodes.size))
        mass = np.exp(log_mass - np.max(log_mass))
        return cls(nodes, mass / mass.sum())

    @classmethod
    def uniform(cls, grid_points: int) -> "GridPosterior":
        nodes = theta_grid(grid_points)
        return cls.from_density(nodes, np.zeros(grid_points))

    @property
    def spacing(self) -> float:
        return float(self.nodes[1] - self.nodes[0])

    @property
    def mean(self) -> float:
        return float(np.dot(self.weights, self.nodes))

    @property
    def sd(self) -> float:
        mean = self.mean
        variance = float(np.dot(self.weights, (self.nodes - mean) ** 2))
        return math.sqrt(max(variance, 0.0))

    @property
    def pi_estimate(self) -> float:
        """Plug-in estimate Π̂ = cos θ̂."""
        return math.cos(self.mean)


def init_prior(true_theta: float, config: TrialConfig, rng: np.random.Generator) -> GridPosterior:
    """
    Truncated-Gaussian prior centred on a jittered copy of the true phase.

    With ``prior_kind="uniform"`` the prior carries no information and no
    draw is consumed.

    Args:
        true_theta: True phase in [0, π]
        config: Trial configuration (prior sd, jitter sd, grid size)
        rng: Random stream; one normal draw is consumed

    Returns:
        The prior GridPosterior
    """
    if config.prior_kind == "uniform":
        return GridPosterior.uniform(config.grid_points)
    prior_mean = true_theta + rng.normal(0.0, config.prior_mean_jitter_sd)
    nodes = theta_grid(config.grid_points)
    log_density = norm.logpdf(nodes, loc=prior_mean, scale=config.prior_sd)
    return GridPosterior.from_density(nodes, log_density)


def bayes_update(posterior: GridPosterior, d: int, layers: int, noise: NoiseModel) -> GridPosterior:
    """
    Condition the posterior on one measurement outcome.

    Args:
        posterior: Current posterior (not modified)
        d: Observed outcome, 0 or 1
        layers: Layer count used for the measurement
        noise: Noise model of the likelihood

    Returns:
        A new normalized GridPosterior
    """
    likelihood = likelihood_noisy(d, posterior.nodes, noise, layers)
    unnormalized = posterior.weights * likelihood
    evidence = float(unnormalized.sum())
    if not evidence >= MIN_EVIDENCE:
        raise ComputationError(
            f"Posterior evidence underflow ({evidence:.3e}) after outcome d={d} at L={layers}"
        )
    return GridPosterior(posterior.nodes, unnormalized / evidence)


def max_layer_count(posterior: GridPosterior, noise: NoiseModel, policy: LayerPolicy) -> int:
    """Largest layer count considered at the current posterior."""
    # the grid cannot resolve a posterior narrower than one node
    sd = max(posterior.sd, posterior.spacing)
    cap = math.ceil(math.pi / (4.0 * sd))
    if noise.lam > 0:
        cap = min(cap, math.ceil(3.0 / noise.lam))
    if policy.max_layers is not None:
        cap = min(cap, policy.max_layers)
    return max(cap, 0)


def choose_layer_count(posterior: GridPosterior, noise: NoiseModel, policy: Optional[LayerPolicy] = None) -> int:
    """
    Pick the next layer count.

    Maximizes Fisher information per unit cost (2L+1) at the posterior mean
    over L ∈ {0, ..., L_max}; ties resolve to the smaller L.
    """
    policy = policy or LayerPolicy()
    if policy.kind == "fixed":
        return policy.fixed_layers

    candidates = np.arange(max_layer_count(posterior, noise, policy) + 1)
    information_per_cost = fisher_information(posterior.mean, noise, candidates) / (2 * candidates + 1)
    # argmax returns the first maximum
    return int(np.argmax(information_per_cost))


@dataclass(frozen=True)
class TrialStep:
    """One inference step of a trial."""

    step: int
    layers: int
    outcome: int
    cum_layers: int
    theta_hat: float
    sd: float
    pi_hat: float
    sq_err_pi: float
    sq_err_theta: float


@dataclass(frozen=True)
class TrialTrace:
    """Per-step record of one trial."""

    config: TrialConfig
    steps: Tuple[TrialStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final(self) -> TrialStep:
        return self.steps[-1]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(step, name) for step in self.steps])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "step": self.column("step"),
                "L": self.column("layers"),
                "d": self.column("outcome"),
                "cum_layers": self.column("cum_layers"),
                "theta_hat": self.column("theta_hat"),
                "sd": self.column("sd"),
                "pi_hat": self.column("pi_hat"),
                "sq_err_pi": self.column("sq_err_pi"),
                "sq_err_theta": self.column("sq_err_theta"),
            }
        )


def run_trial(config: TrialConfig) -> TrialTrace:
    """
    Simulate one RAE trial.

    Each step chooses L from the current posterior, samples d from the true
    noisy likelihood, updates the posterior and records the estimate. The
    trial is a deterministic function of ``config`` (including its seed).
    """
    rng = np.random.default_rng(config.seed)
    true_theta = config.true_theta
    noise = config.noise

    posterior = init_prior(true_theta, config, rng)
    cum_layers = 0
    steps: List[TrialStep] = []

    for step in range(1, config.max_steps + 1):
        layers = choose_layer_count(posterior, noise, config.layer_policy)
        p_zero = float(likelihood_noisy(0, true_theta, noise, layers))
        outcome = 0 if rng.random() < p_zero else 1
        posterior = bayes_update(posterior, outcome, layers, noise)
        cum_layers += 2 * layers + 1

        theta_hat = posterior.mean
        pi_hat = math.cos(theta_hat)
        steps.append(
            TrialStep(
                step=step,
                layers=layers,
                outcome=outcome,
                cum_layers=cum_layers,
                theta_hat=theta_hat,
                sd=posterior.sd,
                pi_hat=pi_hat,
                sq_err_pi=(pi_hat - config.true_pi) ** 2,
                sq_err_theta=(theta_hat - true_theta) ** 2,
            )
        )

    return TrialTrace(config=config, steps=tuple(steps))


def trimmed_count(n_trials: int, trim_fraction: float) -> int:
    """Number of trials dropped from each step's statistics."""
    # guard against 0.1 * 30 == 3.0000000000000004
    dropped = math.ceil(trim_fraction * n_trials - 1e-9)
    return min(max(dropped, 0), n_trials - 1)


@dataclass(frozen=True)
class EnsembleCurve:
    """Trimmed per-step statistics over an ensemble of trials."""

    steps: np.ndarray
    mean_cum_layers: np.ndarray
    trimmed_mse: np.ndarray
    trimmed_mse_theta: np.ndarray
    median_sq_err: np.ndarray
    n_trials: int
    trim_fraction: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "step": self.steps,
                "cum_layers": self.mean_cum_layers,
                "trimmed_mse": self.trimmed_mse,
                "trimmed_mse_theta": self.trimmed_mse_theta,
                "median_sq_err": self.median_sq_err,
                "trim": self.trim_fraction,
            }
        )


def ensemble_stats(traces: Sequence[TrialTrace], trim_fraction: float) -> EnsembleCurve:
    """
    Trimmed mean squared error and mean cost per step.

    At every step the ceil(t·n) trials with the largest Π-space squared error
    are dropped; the MSE and the cumulative layer cost are averaged over the
    retained trials. θ-space errors are trimmed the same way on their own.

    Args:
        traces: Trials of equal length
        trim_fraction: Fraction t ∈ [0, 1) of trials dropped per step

    Returns:
        EnsembleCurve with one entry per step
    """
    if len(traces) == 0:
        raise ConfigurationError("Cannot compute ensemble statistics of an empty ensemble")
    if not 0.0 <= trim_fraction < 1.0:
        raise ConfigurationError(f"Trim fraction must be in [0, 1), got {trim_fraction}")
    lengths = {len(trace) for trace in traces}
    if len(lengths) != 1:
        raise ConfigurationError(f"Traces have different lengths: {sorted(lengths)}")

    sq_err_pi = np.stack([trace.column("sq_err_pi") for trace in traces])
    sq_err_theta = np.stack([trace.column("sq_err_theta") for trace in traces])
    cum_layers = np.stack([trace.column("cum_layers") for trace in traces]).astype(float)

    n_trials = len(traces)
    keep = n_trials - trimmed_count(n_trials, trim_fraction)

    order = np.argsort(sq_err_pi, axis=0, kind="stable")[:keep]
    retained_pi = np.take_along_axis(sq_err_pi, order, axis=0)
    retained_cost = np.take_along_axis(cum_layers, order, axis=0)
    retained_theta = np.sort(sq_err_theta, axis=0)[:keep]

    return EnsembleCurve(
        steps=traces[0].column("step"),
        mean_cum_layers=retained_cost.mean(axis=0),
        trimmed_mse=retained_pi.mean(axis=0),
        trimmed_mse_theta=retained_theta.mean(axis=0),
        median_sq_err=np.median(sq_err_pi, axis=0),
        n_trials=n_trials,
        trim_fraction=trim_fraction,
    )


def cost_to_reach(curve: EnsembleCurve, target_mse: float) -> Optional[float]:
    """Mean cumulative layer cost at the first step whose trimmed MSE is at most ``target_mse``."""
    reached = np.flatnonzero(curve.trimmed_mse <= target_mse)
    if reached.size == 0:
        return None
    return float(curve.mean_cum_layers[reached[0]])


def default_step_budget(layer_fidelity: float) -> int:
    """
    Inference steps per trial for a given layer fidelity.

    Noisier layers buy less information per step, so low-fidelity settings
    get more steps: 200 at fidelity 1, rising to 2000.
    """
    if not 0.0 < layer_fidelity <= 1.0:
        raise ConfigurationError(f"Layer fidelity must be in (0, 1], got {layer_fidelity}")
    lam = -math.log(layer_fidelity)
    return int(min(2000, 200 + math.ceil(12000 * lam)))
