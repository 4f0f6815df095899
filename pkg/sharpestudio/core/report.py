"""
Significance Report

Everything the analyze command prints about one series: sample moments, the Sharpe
ratio under both annualization rules, the autocorrelation it was corrected with, and
the verdict of each significance test. Every number can be recomputed from the series
with the library functions, which is what verify_report does.
"""

import logging
import math
from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, Field

from sharpestudio.autocorr.aggregation import delta
from sharpestudio.autocorr.estimation import estimate_rho, recipe_components
from sharpestudio.errors import VerificationError
from sharpestudio.significance import DEFAULT_REPORT_TESTS, luck_p_value, make_spec, test_registry
from sharpestudio.significance.base import TestKind, coerce_test, registry_key
from sharpestudio.tables.spec import prob_band, sr_band

from .series import (
    ObservationSeries,
    SeriesKind,
    estimate_sharpe,
    sample_mean,
    sample_std,
    sharpe_from_components,
)

logger = logging.getLogger(__name__)

VERIFY_TOLERANCE = 1e-12


class RhoComponents(BaseModel):
    """The three lag estimators averaged by the recipe."""

    model_config = ConfigDict(frozen=True)

    rho1: float
    rho2: float
    rho3: float


class TestVerdict(BaseModel):
    """
    One test's verdict on the observed Sharpe.

    Attributes:
        test: Test identifier
        statistic: Test statistic
        luck: p-value under H0: E[SR] = 0
        skill: 1 - luck
        color: Probability band of the skill percentage
    """

    __test__ = False

    model_config = ConfigDict(frozen=True)

    test: TestKind | str
    statistic: float
    luck: float
    skill: float
    color: str


class Report(BaseModel):
    """
    Significance report for one series.

    Field order is the JSON key order.
    """

    model_config = ConfigDict(frozen=True)

    kind: SeriesKind
    n: int = Field(..., ge=2)
    periods_per_year: float = Field(..., gt=0.0)
    risk_free_per_period: float
    mean: float
    std: float = Field(..., gt=0.0)
    sr_period: float
    sr_annual_sqrt: float
    rho_hat: float = Field(..., gt=-1.0, lt=1.0)
    rho_source: str = Field(..., description="'given', or the estimator name")
    rho_components: RhoComponents | None = None
    delta: float = Field(..., gt=0.0)
    sr_annual_adjusted: float
    eta: float
    sr_color: str
    tests: tuple[TestVerdict, ...]

    def to_json(self) -> str:
        """Deterministic JSON rendering."""
        return self.model_dump_json(indent=2)


def _verdict(test: TestKind | str, sr_annual: float, n: int, periods_per_year: float, rho: float, strict: bool) -> TestVerdict:
    result = test_registry.create(make_spec(test, n, periods_per_year, rho, strict)).evaluate(sr_annual)
    return TestVerdict(
        test=result.test,
        statistic=result.statistic,
        luck=result.luck,
        skill=result.skill,
        color=prob_band(100.0 * result.skill).value,
    )


def build_report(
    series: ObservationSeries,
    rho: float | None = None,
    method: str = "recipe",
    tests: Iterable[TestKind | str] | None = None,
    as_printed: bool = False,
) -> Report:
    """
    Analyze a series.

    Args:
        series: Returns or PnL observations
        rho: Known autocorrelation; estimated with the given method when None
        method: Autocorrelation estimator ("recipe" or "lag1")
        tests: Tests to run; defaults to the six standard tests
        as_printed: Use the printed forms of the recipe and the modified Wald test

    Returns:
        Report

    Raises:
        DegenerateSeriesError: On zero variance, or too few points to estimate rho
        DomainError: If rho is outside (-1, 1) or a test is unknown
    """
    estimate = estimate_sharpe(series, rho=rho, method=method, as_printed=as_printed)

    components = None
    if rho is None and method == "recipe":
        components = RhoComponents(
            **dict(zip(("rho1", "rho2", "rho3"), recipe_components(series, as_printed=as_printed), strict=True))
        )

    kinds = [coerce_test(test) for test in (DEFAULT_REPORT_TESTS if tests is None else tests)]
    verdicts = tuple(
        _verdict(kind, estimate.sr_annual_sqrt, series.n, series.periods_per_year, estimate.rho, as_printed)
        for kind in kinds
    )

    report = Report(
        kind=series.kind,
        n=series.n,
        periods_per_year=series.periods_per_year,
        risk_free_per_period=series.risk_free_per_period,
        mean=sample_mean(series),
        std=sample_std(series),
        sr_period=estimate.sr_period,
        sr_annual_sqrt=estimate.sr_annual_sqrt,
        rho_hat=estimate.rho,
        rho_source="given" if rho is not None else method,
        rho_components=components,
        delta=estimate.delta,
        sr_annual_adjusted=estimate.sr_annual_adjusted,
        eta=estimate.eta,
        sr_color=sr_band(estimate.sr_annual_adjusted).value,
        tests=verdicts,
    )
    logger.info(f"✅ Analyzed {series.n} observations: SR={estimate.sr_annual_sqrt:.4f}, rho={estimate.rho:.4f}")
    return report


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=VERIFY_TOLERANCE, abs_tol=VERIFY_TOLERANCE)


def report_mismatches(report: Report, series: ObservationSeries, as_printed: bool = False) -> list[str]:
    """
    Recompute the report's numbers from the series through independent library paths.

    Returns:
        Description of every number that disagrees beyond 1e-12; empty when consistent
    """
    checks: list[tuple[str, float, float]] = [
        ("mean", report.mean, float(sum(series.values)) / series.n),
        ("std", report.std, sample_std(series)),
        ("sr_annual_sqrt", report.sr_annual_sqrt, math.sqrt(report.periods_per_year) * report.sr_period),
        ("sr_annual_adjusted", report.sr_annual_adjusted, report.sr_annual_sqrt / report.delta),
        ("delta", report.delta, delta(report.rho_hat, report.periods_per_year)),
        ("eta", report.eta, math.sqrt(report.n) * report.sr_period),
    ]
    if report.kind is SeriesKind.RETURNS:
        checks.append(("sr_period", report.sr_period, sharpe_from_components(series)))
    else:
        checks.append(("sr_period", report.sr_period, report.mean / report.std))

    if report.rho_source != "given":
        checks.append(("rho_hat", report.rho_hat, estimate_rho(series, method=report.rho_source, as_printed=as_printed)))
    if report.rho_components is not None:
        recomputed = recipe_components(series, as_printed=as_printed)
        for name, value in zip(("rho1", "rho2", "rho3"), recomputed, strict=True):
            checks.append((name, getattr(report.rho_components, name), float(value)))

    for verdict in report.tests:
        spec = make_spec(verdict.test, report.n, report.periods_per_year, report.rho_hat, as_printed)
        luck = luck_p_value(report.sr_annual_sqrt, spec)
        checks.append((f"{registry_key(verdict.test)}.luck", verdict.luck, luck))
        checks.append((f"{registry_key(verdict.test)}.skill", verdict.skill, 1.0 - luck))

    return [f"{name}: reported {got!r}, recomputed {want!r}" for name, got, want in checks if not _close(got, want)]


def verify_report(report: Report, series: ObservationSeries, as_printed: bool = False) -> None:
    """
    Raise if any reported number cannot be recomputed.

    Raises:
        VerificationError: Listing every mismatch
    """
    mismatches = report_mismatches(report, series, as_printed)
    if mismatches:
        logger.error(f"❌ Report verification failed: {len(mismatches)} mismatches")
        raise VerificationError("report verification failed:\n" + "\n".join(mismatches))
    logger.debug("✅ Report verified")
