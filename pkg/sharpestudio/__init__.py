"""
SharpeStudio - Skill or luck? Significance tests for Sharpe ratios

Simple API for testing whether an observed Sharpe ratio is statistically significant,
with the annualization corrected for autocorrelated returns.

Example:
    import sharpestudio as ss

    series = ss.load_series("returns.csv", periods_per_year=252)
    report = ss.analyze_series(series)          # rho estimated from the data
    print(report.tests[0].skill)

    # Smallest annualized Sharpe a 2-year daily track record needs for 90% skill
    ss.min_sharpe("student", n=500, periods_per_year=252, confidence=0.90, tail="one")
"""

__version__ = "0.1.0"

import logging
from collections.abc import Iterable

from .core.report import Report, build_report, verify_report
from .core.series import ObservationSeries, SeriesKind, SharpeEstimate, estimate_sharpe, from_prices, load_series
from .errors import (
    ConvergenceError,
    DegenerateSeriesError,
    DomainError,
    SeriesParseError,
    SharpeStudioError,
    TableSpecError,
    UnreachableConfidenceError,
)
from .significance import make_spec, resolve_test, test_registry
from .significance import min_sharpe as _min_sharpe
from .significance import skill as _skill
from .significance.base import SignificanceTest, TestKind, TestSpec, registry_key
from .tables import Table, TableSpec, generate, reference_table

# Export main classes and functions
__all__ = [
    "ConvergenceError",
    "DegenerateSeriesError",
    "DomainError",
    "ObservationSeries",
    "Report",
    "SeriesKind",
    "SeriesParseError",
    "SharpeEstimate",
    "SharpeStudioError",
    "SignificanceTest",
    "Table",
    "TableSpec",
    "TableSpecError",
    "TestKind",
    "TestSpec",
    "UnreachableConfidenceError",
    "analyze_series",
    "estimate_sharpe",
    "from_prices",
    "generate_table",
    "list_tests",
    "load_series",
    "min_sharpe",
    "register_test",
    "skill",
]

logger = logging.getLogger(__name__)


def analyze_series(
    series: ObservationSeries,
    rho: float | None = None,
    method: str = "recipe",
    tests: Iterable[TestKind | str] | None = None,
    verify: bool = False,
) -> Report:
    """
    Full significance report for a series.

    Args:
        series: Returns or PnL observations
        rho: Known autocorrelation; estimated from the series when None
        method: Autocorrelation estimator ("recipe" or "lag1")
        tests: Tests to run (default: the six standard tests)
        verify: Recompute every number independently and raise on disagreement

    Returns:
        Report
    """
    report = build_report(series, rho=rho, method=method, tests=tests)
    if verify:
        verify_report(report, series)
    return report


def min_sharpe(
    test: str,
    n: int,
    periods_per_year: float,
    confidence: float,
    rho: float = 0.0,
    tail: str = "two",
) -> float:
    """
    Minimum annualized Sharpe ratio reaching a confidence level.

    Args:
        test: Test family ("student", "fisher", "wald", "wald-raw", "wald-modified", "beta")
        n: Number of observations
        periods_per_year: Annualization factor F
        confidence: Target skill, strictly between 0 and 1
        rho: First-order autocorrelation of the returns
        tail: "one" or "two"
    """
    return _min_sharpe(make_spec(resolve_test(test, tail), n, periods_per_year, rho), confidence)


def skill(sr_annual: float, test: str, n: int, periods_per_year: float, rho: float = 0.0, tail: str = "two") -> float:
    """Probability that an annualized Sharpe ratio reflects skill rather than luck."""
    return _skill(sr_annual, make_spec(resolve_test(test, tail), n, periods_per_year, rho))


def generate_table(name_or_spec: str | TableSpec, workers: int | None = None) -> Table:
    """
    Generate a catalogued table by name, or any TableSpec.

    Example:
        table = generate_table("tab1")
        table.cell(0.0, 250).value  # 1.65
    """
    spec = reference_table(name_or_spec) if isinstance(name_or_spec, str) else name_or_spec
    return generate(spec, workers=workers)


def register_test(kind: TestKind | str, test_class: type[SignificanceTest]):
    """
    Register a significance test class under a built-in kind or a new name.

    A new name becomes usable everywhere a test is accepted: specs, reports, skill,
    min_sharpe and Monte Carlo calibration.

    Args:
        kind: TestKind to replace a built-in test, or a new name
        test_class: SignificanceTest subclass
    """
    test_registry.register(kind, test_class)
    logger.info(f"✅ Registered test: {registry_key(kind)}")


def list_tests() -> list[str]:
    """List available test names"""
    return test_registry.list_available()
