"""
Power-Law Scaling Fits

This module fits y = a·N^b + c to (qubit count, quantity) pairs and
extrapolates to larger qubit counts. With exactly two points the offset c
is pinned to zero and the fit is solved in closed form.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import least_squares

from src.core.config import get_settings
from src.core.exceptions import ComputationError, ConfigurationError, FitConvergenceError

logger = logging.getLogger(__name__)


class PowerLawFit(BaseModel):
    """Fitted y = a·N^b + c."""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    residual_norm: float
    num_points: int
    offset_pinned: bool = False

    def evaluate(self, n: float) -> float:
        return self.a * n ** self.b + self.c


def _power_law(n: np.ndarray, a: float, b: float, c: float) -> np.ndarray:
    return a * np.power(n, b) + c


def _check_points(points: Sequence[Tuple[float, float]]) -> Tuple[np.ndarray, np.ndarray]:
    if len(points) < 2:
        raise ConfigurationError(f"A power-law fit needs at least 2 points, got {len(points)}")
    data = np.asarray(sorted(points), dtype=float)
    n, y = data[:, 0], data[:, 1]
    if np.any(n <= 0):
        raise ConfigurationError("Qubit counts must be positive")
    if np.unique(n).size != n.size:
        raise ConfigurationError("Qubit counts must be distinct")
    if np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise ConfigurationError("Fitted quantities must be positive and finite")
    return n, y


def _initial_guess(n: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    # slope of log|Δy| against log N at interval midpoints estimates b - 1
    delta = np.abs(np.diff(y))
    delta = np.maximum(delta, 1e-12 * np.max(y))
    midpoints = 0.5 * (n[1:] + n[:-1])
    if delta.size >= 2:
        slope = np.polyfit(np.log(midpoints), np.log(delta), 1)[0]
        b0 = slope + 1.0
    else:
        b0 = np.polyfit(np.log(n), np.log(y), 1)[0]
    if not np.isfinite(b0) or abs(b0) < 1e-6:
        b0 = 1.0
    a0 = y[-1] / n[-1] ** b0
    return float(a0), float(b0), 0.0


def fit_power_law(points: Sequence[Tuple[float, float]], max_iterations: Optional[int] = None) -> PowerLawFit:
    """
    Fit y = a·N^b + c by nonlinear least squares.

    Args:
        points: (N, y) pairs with distinct positive N and positive y
        max_iterations: Function-evaluation cap (default from settings)

    Returns:
        PowerLawFit
    """
    n, y = _check_points(points)

    if n.size == 2:
        b = math.log(y[1] / y[0]) / math.log(n[1] / n[0])
        a = y[0] / n[0] ** b
        logger.debug(f"Two-point fit: a={a:.6g}, b={b:.6g}, c pinned to 0")
        return PowerLawFit(a=a, b=b, c=0.0, residual_norm=0.0, num_points=2, offset_pinned=True)

    max_iterations = max_iterations or get_settings().fit_max_iterations
    p0 = _initial_guess(n, y)
    # plain least squares; no covariance estimate
    result = least_squares(
        lambda p: _power_law(n, *p) - y, p0, method="lm", max_nfev=max_iterations, xtol=1e-12, ftol=1e-12
    )
    if result.status <= 0:
        raise FitConvergenceError(
            f"Power-law fit did not converge within {max_iterations} evaluations: {result.message}"
        )
    params = result.x

    if not np.all(np.isfinite(params)):
        raise FitConvergenceError(f"Power-law fit produced non-finite parameters {params}")

    a, b, c = (float(p) for p in params)
    residual = float(np.linalg.norm(_power_law(n, a, b, c) - y))
    logger.debug(f"Fitted {n.size} points: a={a:.6g}, b={b:.6g}, c={c:.6g}, residual={residual:.3g}")
    return PowerLawFit(a=a, b=b, c=c, residual_norm=residual, num_points=int(n.size))


def extrapolate(fit: PowerLawFit, n_target: float) -> float:
    """Evaluate a fit at ``n_target``; the result must be positive."""
    if not n_target > 0:
        raise ConfigurationError(f"Target qubit count must be positive, got {n_target}")
    value = fit.evaluate(n_target)
    if not (math.isfinite(value) and value > 0):
        raise ComputationError(f"Extrapolated value {value} at N={n_target} is not positive")
    return value
