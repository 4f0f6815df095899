"""
SharpeStudio Autocorrelation

AR(1) modelling, autocorrelation estimation and time-aggregation of Sharpe ratios.
"""

from .aggregation import (
    aggregated_variance_general,
    aggregated_variance_stationary,
    aggregation_ratio_general,
    aggregation_ratio_stationary,
    ar1_correlation_matrix,
    ar1_correlations,
    delta,
)
from .ar1 import Ar1Params, aggregated_variance_ar1, autocovariance, fit_ar1, stationary_variance
from .estimation import RHO_METHODS, estimate_rho, lag_correlation, recipe_components

__all__ = [
    "Ar1Params",
    "RHO_METHODS",
    "aggregated_variance_ar1",
    "aggregated_variance_general",
    "aggregated_variance_stationary",
    "aggregation_ratio_general",
    "aggregation_ratio_stationary",
    "ar1_correlation_matrix",
    "ar1_correlations",
    "autocovariance",
    "delta",
    "estimate_rho",
    "fit_ar1",
    "lag_correlation",
    "recipe_components",
    "stationary_variance",
]
