"""
Time Aggregation

How a Sharpe ratio measured on one period scales to q aggregated periods when returns
are autocorrelated. The AR(1) case reduces to the correction factor delta(rho, q): the
q-period Sharpe equals the square-root-rule Sharpe divided by delta.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from sharpestudio.errors import DomainError

logger = logging.getLogger(__name__)

# Below this |rho| delta^2 is evaluated from its second-order expansion
_SMALL_RHO = 1e-8


def _check_rho(rho: float) -> None:
    if not math.isfinite(rho) or abs(rho) >= 1.0:
        raise DomainError(f"autocorrelation must satisfy |rho| < 1, got {rho}")


def _real_power(rho: float, q: float) -> float:
    """rho**q, taking the real part of the principal value for rho < 0 and fractional q."""
    if rho >= 0.0 or float(q).is_integer():
        return rho**q
    return abs(rho) ** q * math.cos(math.pi * q)


def delta(rho: float, q: float) -> float:
    """
    AR(1) aggregation correction factor.

    delta = sqrt(1 + (2 rho / (1 - rho)) * (1 - (1 - rho^q) / (q (1 - rho))))

    delta > 1 for positive autocorrelation (the square-root rule underestimates the
    aggregated Sharpe) and delta < 1 for negative autocorrelation.

    Args:
        rho: First-order autocorrelation, |rho| < 1
        q: Number of aggregated periods (>= 1, may be fractional)

    Returns:
        The positive correction factor, exactly 1.0 when rho == 0

    Raises:
        DomainError: If |rho| >= 1 or q < 1
    """
    _check_rho(rho)
    if not q >= 1.0:
        raise DomainError(f"delta requires q >= 1, got {q}")

    if rho == 0.0:
        return 1.0

    if abs(rho) < _SMALL_RHO and q >= 2.0:
        squared = 1.0 + 2.0 * rho * (1.0 - 1.0 / q) + 2.0 * rho * rho * (1.0 - 2.0 / q)
        return math.sqrt(squared)

    one_minus = 1.0 - rho
    squared = 1.0 + (2.0 * rho / one_minus) * (1.0 - (1.0 - _real_power(rho, q)) / (q * one_minus))
    if squared <= 0.0:
        raise DomainError(f"delta^2 is not positive for rho={rho}, q={q}")
    return math.sqrt(squared)


def ar1_correlations(rho: float, q: int) -> np.ndarray:
    """Lag correlations rho^k for k = 1..q-1 of an AR(1) process."""
    _check_rho(rho)
    return rho ** np.arange(1, q, dtype=float)


def ar1_correlation_matrix(rho: float, q: int) -> np.ndarray:
    """q x q correlation matrix with entries rho^|u - v|."""
    _check_rho(rho)
    lags = np.abs(np.subtract.outer(np.arange(q), np.arange(q)))
    return rho ** lags.astype(float)


def _check_lag_correlations(rho_k: Sequence[float], q: int) -> np.ndarray:
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    correlations = np.asarray(rho_k, dtype=float)
    if correlations.shape != (q - 1,):
        raise DomainError(f"expected {q - 1} lag correlations for q={q}, got {correlations.shape[0]}")
    if np.any(np.abs(correlations) > 1.0):
        raise DomainError("lag correlations must lie in [-1, 1]")
    return correlations


def aggregated_variance_stationary(sigma: float, rho_k: Sequence[float], q: int) -> float:
    """
    Variance of the sum of q consecutive returns of a stationary series.

    Var[R_t(q)] = sigma^2 (q + 2 sum_{k=1}^{q-1} (q - k) rho_k)

    Raises:
        DomainError: If the correlation structure yields a non-positive variance
    """
    correlations = _check_lag_correlations(rho_k, q)
    weights = q - np.arange(1, q, dtype=float)
    variance = sigma * sigma * (q + 2.0 * math.fsum(weights * correlations))
    if variance <= 0.0:
        raise DomainError(f"inconsistent correlation structure: aggregated variance {variance} <= 0")
    return variance


def aggregation_ratio_stationary(rho_k: Sequence[float], q: int) -> float:
    """
    Ratio SR(q) / SR for a stationary series with lag correlations rho_1..rho_{q-1}.

    Args:
        rho_k: Lag correlations, length q - 1
        q: Number of aggregated periods

    Returns:
        q / sqrt(q + 2 sum_k (q - k) rho_k), which is sqrt(q) when every rho_k is zero

    Raises:
        DomainError: If the denominator is not positive
    """
    variance = aggregated_variance_stationary(1.0, rho_k, q)
    return q / math.sqrt(variance)


def _check_general_inputs(sigmas: Sequence[float], corr: np.ndarray | Sequence[Sequence[float]]) -> tuple:
    scales = np.asarray(sigmas, dtype=float)
    matrix = np.asarray(corr, dtype=float)
    q = scales.shape[0]
    if q < 1 or matrix.shape != (q, q):
        raise DomainError(f"correlation matrix must be {q}x{q}, got {matrix.shape}")
    if np.any(scales <= 0.0):
        raise DomainError("per-period volatilities must be positive")
    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=1e-12):
        raise DomainError("correlation matrix must be symmetric")
    if not np.allclose(np.diag(matrix), 1.0, rtol=0.0, atol=1e-12):
        raise DomainError("correlation matrix must have a unit diagonal")
    if np.any(np.abs(matrix) > 1.0 + 1e-12):
        raise DomainError("correlations must lie in [-1, 1]")
    return scales, matrix


def aggregated_variance_general(
    sigmas: Sequence[float], corr: np.ndarray | Sequence[Sequence[float]]
) -> float:
    """
    Variance of R_t + ... + R_{t-q+1} for arbitrary per-period volatilities and correlations.

    Evaluated as the double sum over lags: the q squared volatilities plus, for each
    lag k, twice the k-th superdiagonal of the covariance.

    Args:
        sigmas: Volatility of each of the q periods, most recent first
        corr: Symmetric q x q correlation matrix with unit diagonal

    Returns:
        Var[R_t(q)]

    Raises:
        DomainError: If the inputs are malformed or the variance is not positive
    """
    scales, matrix = _check_general_inputs(sigmas, corr)
    q = scales.shape[0]

    terms = [float(np.sum(scales * scales))]
    for k in range(1, q):
        terms.append(2.0 * float(np.sum(np.diagonal(matrix, k) * scales[:-k] * scales[k:])))
    variance = math.fsum(terms)

    if variance <= 0.0:
        raise DomainError(f"correlation matrix is not positive definite: aggregated variance {variance}")
    return variance


def aggregation_ratio_general(sigmas: Sequence[float], corr: np.ndarray | Sequence[Sequence[float]]) -> float:
    """
    Most general ratio SR(q) / SR = q sigma_inf / sqrt(Var[R_t(q)]).

    sigma_inf is the root-mean-square per-period volatility, which reduces to sigma
    when all periods share the same volatility.
    """
    variance = aggregated_variance_general(sigmas, corr)
    scales = np.asarray(sigmas, dtype=float)
    sigma_inf = math.sqrt(float(np.mean(scales * scales)))
    return scales.shape[0] * sigma_inf / math.sqrt(variance)
