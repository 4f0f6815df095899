"""
AR(1) Return Model

R_t = mu + rho (R_{t-1} - mu) + sigma v_t, with v_t a unit-variance white noise.
"""

import logging
import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from sharpestudio.errors import DegenerateSeriesError, DomainError

from .aggregation import delta
from .estimation import RhoMethod, as_values, estimate_rho

logger = logging.getLogger(__name__)


class Ar1Params(BaseModel):
    """
    Parameters of a stationary AR(1) return process.

    Attributes:
        mu: Per-period mean return
        rho: First-order autocorrelation, strictly inside (-1, 1)
        sigma: Scale of the unit-variance innovation
    """

    model_config = ConfigDict(frozen=True)

    mu: float = Field(default=0.0, description="Per-period mean return.")
    rho: float = Field(default=0.0, gt=-1.0, lt=1.0, description="First-order autocorrelation.")
    sigma: float = Field(default=1.0, gt=0.0, description="Innovation scale.")


def _check_params(params: Ar1Params) -> None:
    # model_construct() skips validation
    if not abs(params.rho) < 1.0:
        raise DomainError(f"AR(1) process is stationary only for |rho| < 1, got {params.rho}")


def stationary_variance(params: Ar1Params) -> float:
    """
    Unconditional variance sigma^2 / (1 - rho^2).

    Raises:
        DomainError: If |rho| >= 1
    """
    _check_params(params)
    return params.sigma**2 / (1.0 - params.rho**2)


def autocovariance(params: Ar1Params, lag: int) -> float:
    """
    Autocovariance at the given lag, sigma^2 rho^|lag| / (1 - rho^2).

    Raises:
        DomainError: If |rho| >= 1
    """
    return stationary_variance(params) * params.rho ** abs(lag)


def aggregated_variance_ar1(params: Ar1Params, q: int) -> float:
    """Variance of q aggregated AR(1) returns, q * stationary_variance * delta(rho, q)^2."""
    return q * stationary_variance(params) * delta(params.rho, q) ** 2


def fit_ar1(
    series: Any,
    method: RhoMethod = "recipe",
    as_printed: bool = False,
) -> Ar1Params:
    """
    Fit AR(1) parameters to a series.

    mu is the sample mean and rho comes from estimate_rho; sigma is chosen so the
    implied stationary variance matches the sample variance.

    Args:
        series: ObservationSeries or 1-D array, at least four observations
        method: Autocorrelation estimator, "recipe" or "lag1"
        as_printed: Forwarded to the recipe

    Returns:
        Fitted Ar1Params

    Raises:
        DegenerateSeriesError: If the series is too short or constant
    """
    values = as_values(series)
    rho = estimate_rho(values, method=method, as_printed=as_printed)

    mean = float(np.mean(values))
    std = float(np.sqrt(np.sum((values - mean) ** 2) / (values.shape[0] - 1)))
    if std == 0.0:
        raise DegenerateSeriesError("cannot fit AR(1) to a series with zero variance")

    params = Ar1Params(mu=mean, rho=rho, sigma=std * math.sqrt(1.0 - rho * rho))
    logger.debug(f"📐 Fitted AR(1): mu={params.mu:.6g}, rho={params.rho:.4f}, sigma={params.sigma:.6g}")
    return params
