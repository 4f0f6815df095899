"""
Autocorrelation Estimation

Estimates the first-order autocorrelation of a return series. The default recipe
averages three estimators built from lags one, two and three:

    rho1 = Cov(R_t, R_{t-1}) / avg var
    rho2 = sqrt(max(0, Cov(R_t, R_{t-2}) / avg var))
    rho3 = cbrt(Cov(R_t, R_{t-3}) / avg var)

where "avg var" is the mean of the two window variances. Each lag uses its own
overlapping windows, their own means and the n - lag - 1 divisor.

All functions accept an ObservationSeries, a 1-D array (one series) or a 2-D array
(one series per row, as produced by the Monte Carlo engine).
"""

import logging
from typing import Any, Literal

import numpy as np

from sharpestudio.core.config import get_settings
from sharpestudio.errors import DegenerateSeriesError, DomainError

logger = logging.getLogger(__name__)

RhoMethod = Literal["recipe", "lag1"]
RHO_METHODS: tuple[str, ...] = ("recipe", "lag1")

MIN_OBSERVATIONS = {"recipe": 4, "lag1": 3}


def as_values(series: Any) -> np.ndarray:
    """Extract the observation array from an ObservationSeries or any array-like."""
    values = getattr(series, "values", series)
    return np.asarray(values, dtype=float)


def lag_correlation(series: Any, lag: int) -> np.ndarray | float:
    """
    Covariance of (R_t, R_{t-lag}) over the mean of the two window variances.

    Rows whose windows have zero variance get 0.0: a window that never moves carries
    no evidence about autocorrelation.

    Args:
        series: Series or array of shape (..., n)
        lag: Positive lag

    Returns:
        Scalar for 1-D input, array of shape (...) otherwise
    """
    values = as_values(series)
    if lag < 1 or values.shape[-1] <= lag:
        raise DegenerateSeriesError(f"lag {lag} needs more than {lag} observations, got {values.shape[-1]}")

    head = values[..., lag:]
    tail = values[..., :-lag]
    head = head - head.mean(axis=-1, keepdims=True)
    tail = tail - tail.mean(axis=-1, keepdims=True)
    # the n - lag - 1 divisor cancels in the ratio
    covariance = np.sum(head * tail, axis=-1)
    average_variance = 0.5 * (np.sum(head * head, axis=-1) + np.sum(tail * tail, axis=-1))

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(average_variance > 0.0, covariance / average_variance, 0.0)
    return float(ratio) if ratio.ndim == 0 else ratio


def recipe_components(series: Any, as_printed: bool = False) -> tuple[Any, Any, Any]:
    """
    The three autocorrelation estimators averaged by the recipe.

    Args:
        series: Series or array of shape (..., n), n >= 4
        as_printed: Build the third estimator from the lag-2 covariance, as printed

    Returns:
        (rho1, rho2, rho3); rho2 is non-negative by construction and rho3 keeps its sign
    """
    _require_length(series, "recipe")
    rho1 = lag_correlation(series, 1)
    lag2 = lag_correlation(series, 2)
    rho2 = np.sqrt(np.maximum(lag2, 0.0))
    rho3 = np.cbrt(lag2 if as_printed else lag_correlation(series, 3))
    if np.ndim(rho1) == 0:
        return float(rho1), float(rho2), float(rho3)
    return rho1, rho2, rho3


def _require_length(series: Any, method: str) -> np.ndarray:
    values = as_values(series)
    minimum = MIN_OBSERVATIONS[method]
    if values.ndim == 0 or values.shape[-1] < minimum:
        count = 0 if values.ndim == 0 else values.shape[-1]
        raise DegenerateSeriesError(f"{method} autocorrelation needs at least {minimum} observations, got {count}")
    return values


def estimate_rho(
    series: Any,
    method: RhoMethod = "recipe",
    as_printed: bool = False,
    clamp: float | None = None,
) -> Any:
    """
    Estimate the first-order autocorrelation of a series.

    Args:
        series: ObservationSeries, 1-D array, or 2-D array with one series per row
        method: "recipe" (average of the three lag estimators) or "lag1" (rho1 only)
        as_printed: Use the lag-2 covariance for the third recipe estimator
        clamp: Bound for the result; defaults to Settings.rho_clamp (0.999)

    Returns:
        Estimated rho in [-clamp, clamp]; a float for 1-D input, an array otherwise

    Raises:
        DomainError: If the method is unknown
        DegenerateSeriesError: If the series is too short or constant
    """
    if method not in RHO_METHODS:
        raise DomainError(f"Unknown rho method: {method}. Available: {list(RHO_METHODS)}")

    values = _require_length(series, method)
    if values.ndim == 1 and np.ptp(values) == 0.0:
        raise DegenerateSeriesError("cannot estimate autocorrelation of a constant series")

    bound = get_settings().rho_clamp if clamp is None else clamp

    if method == "lag1":
        raw = lag_correlation(values, 1)
    else:
        rho1, rho2, rho3 = recipe_components(values, as_printed=as_printed)
        raw = (np.asarray(rho1) + np.asarray(rho2) + np.asarray(rho3)) / 3.0

    clamped = np.clip(raw, -bound, bound)
    if np.ndim(clamped) == 0:
        if clamped != raw:
            logger.warning(f"⚠️ Estimated rho {float(raw):.6f} clamped to {float(clamped):.6f}")
        return float(clamped)

    logger.debug(f"📐 Estimated rho for {clamped.shape[0]} series ({method})")
    return clamped
