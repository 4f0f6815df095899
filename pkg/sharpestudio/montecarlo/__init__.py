"""
SharpeStudio Monte Carlo

Simulated AR(1) returns and empirical calibration of the significance tests.
"""

from .calibration import (
    AggregationCheck,
    CalibrationResult,
    binomial_ci_halfwidth,
    calibration_grid,
    empirical_aggregation_check,
    empirical_type1,
    to_csv_rows,
)
from .config import InnovationLaw, RhoMode, SimulationConfig
from .simulation import block_generator, simulate_ar1, simulate_paths

__all__ = [
    "AggregationCheck",
    "CalibrationResult",
    "InnovationLaw",
    "RhoMode",
    "SimulationConfig",
    "binomial_ci_halfwidth",
    "block_generator",
    "calibration_grid",
    "empirical_aggregation_check",
    "empirical_type1",
    "simulate_ar1",
    "simulate_paths",
    "to_csv_rows",
]
