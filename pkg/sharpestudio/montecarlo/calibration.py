"""
Monte Carlo Calibration

Empirical type-I error rates of the significance tests under the null of a zero
Sharpe ratio, and a simulation check of the aggregated-variance formula.

Rejections are decided with each test's critical statistic, so a block of paths is
tested with a handful of array operations instead of one CDF call per path. Counts from
independent blocks are summed, which keeps the result independent of scheduling.
"""

import logging
import math
import time
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from sharpestudio.autocorr.aggregation import aggregated_variance_stationary, ar1_correlations, delta
from sharpestudio.autocorr.ar1 import Ar1Params, stationary_variance
from sharpestudio.autocorr.estimation import estimate_rho
from sharpestudio.core.config import get_settings
from sharpestudio.significance import make_spec, test_registry
from sharpestudio.significance.base import TestKind, TestSpec, coerce_test, registry_key

from .config import RhoMode, SimulationConfig
from .simulation import block_generator, draw_innovations, simulate_paths

logger = logging.getLogger(__name__)

# two-sided 99% normal quantile for the binomial confidence interval
Z_99 = 2.5758293035489004

CSV_COLUMNS = ("test", "N", "F", "rho", "alpha", "reps", "rate", "ci")


class CalibrationResult(BaseModel):
    """
    Empirical rejection rate of one test at one significance level.

    Attributes:
        test: Test identifier
        n: Observations per path
        periods_per_year: F given to the test
        rho: True autocorrelation of the simulated paths
        alpha: Significance level
        replications: Number of paths
        rejections: Paths with luck < alpha
        rate: rejections / replications
        ci_halfwidth: Half-width of the 99% binomial (normal approximation) interval
        rho_mode: Whether the test saw the true or the estimated rho
    """

    model_config = ConfigDict(frozen=True)

    test: TestKind | str
    n: int
    periods_per_year: float
    rho: float
    alpha: float
    replications: int
    rejections: int
    rate: float
    ci_halfwidth: float
    rho_mode: RhoMode

    def within_ci(self, slack: float = 0.0) -> bool:
        """True when alpha lies inside the interval widened by slack."""
        return abs(self.rate - self.alpha) <= self.ci_halfwidth + slack


class AggregationCheck(BaseModel):
    """
    Simulated versus closed-form variance of q aggregated returns.

    Attributes:
        q: Number of aggregated periods
        replications: Number of simulated sums
        empirical: Sample variance of the simulated sums
        theoretical: sigma^2 (q + 2 sum (q - k) rho^k) with sigma^2 the stationary variance
        relative_error: |empirical - theoretical| / theoretical
        standard_error: Relative standard error of a normal sample variance, sqrt(2 / (reps - 1))
    """

    model_config = ConfigDict(frozen=True)

    q: int
    replications: int
    empirical: float
    theoretical: float
    relative_error: float
    standard_error: float

    @property
    def within_bounds(self) -> bool:
        return self.relative_error < 4.0 * self.standard_error


def binomial_ci_halfwidth(rate: float, replications: int) -> float:
    return Z_99 * math.sqrt(rate * (1.0 - rate) / replications)


def _block_sharpes(config: SimulationConfig, count: int, block: int) -> tuple[np.ndarray, np.ndarray | None]:
    """Annualized Sharpe of every path in a block, and per-path delta in estimated mode."""
    paths = simulate_paths(config, count, block)
    means = paths.mean(axis=1)
    stds = paths.std(axis=1, ddof=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        sr_annual = math.sqrt(config.periods_per_year) * (means - config.risk_free_per_period) / stds

    if config.rho_mode is RhoMode.TRUE:
        return sr_annual, None

    rhos = estimate_rho(paths, method=config.rho_method, as_printed=config.as_printed)
    deltas = np.fromiter((delta(float(rho), config.periods_per_year) for rho in rhos), dtype=float, count=count)
    return sr_annual, deltas


def _count_rejections(
    config: SimulationConfig,
    specs: Sequence[TestSpec],
    alphas: Sequence[float],
) -> np.ndarray:
    """Rejection counts, shape (len(specs), len(alphas)), summed over all blocks."""
    tests = [test_registry.create(spec) for spec in specs]

    def run_block(index_and_size: tuple[int, int]) -> np.ndarray:
        block, size = index_and_size
        sr_annual, deltas = _block_sharpes(config, size, block)
        counts = np.zeros((len(tests), len(alphas)), dtype=np.int64)
        for i, test in enumerate(tests):
            for j, alpha in enumerate(alphas):
                counts[i, j] = int(np.count_nonzero(test.rejects(sr_annual, alpha, deltas)))
        return counts

    blocks = list(enumerate(config.block_sizes()))
    workers = config.workers or get_settings().workers
    if workers == 1 or len(blocks) == 1:
        per_block = [run_block(item) for item in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            per_block = list(executor.map(run_block, blocks))
    return np.sum(per_block, axis=0)


def _results(
    config: SimulationConfig,
    specs: Sequence[TestSpec],
    alphas: Sequence[float],
    counts: np.ndarray,
) -> list[CalibrationResult]:
    results = []
    for i, spec in enumerate(specs):
        for j, alpha in enumerate(alphas):
            rejections = int(counts[i, j])
            rate = rejections / config.replications
            results.append(
                CalibrationResult(
                    test=spec.test,
                    n=config.n,
                    periods_per_year=config.periods_per_year,
                    rho=config.params.rho,
                    alpha=alpha,
                    replications=config.replications,
                    rejections=rejections,
                    rate=rate,
                    ci_halfwidth=binomial_ci_halfwidth(rate, config.replications),
                    rho_mode=config.rho_mode,
                )
            )
    return results


def _check_null(config: SimulationConfig) -> None:
    if config.params.mu != config.risk_free_per_period:
        logger.warning(
            f"⚠️ mu={config.params.mu} differs from the risk-free rate {config.risk_free_per_period}: "
            "the simulated Sharpe is not zero, rates measure power rather than size"
        )


def empirical_type1(test: TestSpec | TestKind | str, config: SimulationConfig) -> CalibrationResult:
    """
    Fraction of null paths on which a test rejects at config.alpha.

    Args:
        test: Test to calibrate. A TestSpec contributes its test kind and modified-Wald
            flag; N, F and rho always come from the configuration
        config: Simulation configuration

    Returns:
        CalibrationResult with the rejection rate and its 99% interval half-width
    """
    _check_null(config)
    kind = test.test if isinstance(test, TestSpec) else coerce_test(test)
    strict = test.printed_modified if isinstance(test, TestSpec) else False
    spec = make_spec(kind, config.n, config.periods_per_year, config.params.rho, strict)

    started = time.perf_counter()
    counts = _count_rejections(config, [spec], [config.alpha])
    result = _results(config, [spec], [config.alpha], counts)[0]
    logger.info(
        f"🎲 {registry_key(kind)}: rate={result.rate:.4f} +/- {result.ci_halfwidth:.4f} at alpha={config.alpha} "
        f"({config.replications} paths, {time.perf_counter() - started:.2f}s)"
    )
    return result


def calibration_grid(
    tests: Iterable[TestKind | str],
    n_values: Iterable[int],
    rhos: Iterable[float],
    alphas: Iterable[float],
    base: SimulationConfig | None = None,
) -> list[CalibrationResult]:
    """
    Type-I error rates over a grid of tests, sample sizes, autocorrelations and levels.

    Paths are simulated once per (N, rho) and shared by every test and level.

    Args:
        tests: Test kinds
        n_values: Observations per path
        rhos: True autocorrelations
        alphas: Significance levels
        base: Template configuration for everything else (seed, replications, F, mode)

    Returns:
        Results ordered by N, rho, test, alpha
    """
    base = base or SimulationConfig()
    kinds = [coerce_test(test) for test in tests]
    levels = list(alphas)
    _check_null(base)

    results: list[CalibrationResult] = []
    for n in n_values:
        for rho in rhos:
            config = base.model_copy(update={"n": n, "params": base.params.model_copy(update={"rho": rho})})
            specs = [make_spec(kind, n, config.periods_per_year, rho) for kind in kinds]
            counts = _count_rejections(config, specs, levels)
            results.extend(_results(config, specs, levels, counts))
            logger.debug(f"🎲 Calibrated N={n}, rho={rho}")

    logger.info(f"✅ Calibration finished: {len(results)} rows")
    return results


def to_csv_rows(results: Iterable[CalibrationResult]) -> str:
    """CSV text with columns test, N, F, rho, alpha, reps, rate, ci."""
    frame = pd.DataFrame(
        [
            (
                registry_key(result.test),
                result.n,
                f"{result.periods_per_year:g}",
                f"{result.rho:g}",
                f"{result.alpha:g}",
                result.replications,
                f"{result.rate:.6f}",
                f"{result.ci_halfwidth:.6f}",
            )
            for result in results
        ],
        columns=list(CSV_COLUMNS),
    )
    return frame.to_csv(index=False, lineterminator="\n")


def empirical_aggregation_check(
    params: Ar1Params,
    q: int,
    replications: int,
    seed: int | None = None,
) -> AggregationCheck:
    """
    Compare the simulated variance of q-period sums with the closed form.

    Args:
        params: AR(1) parameters
        q: Number of aggregated periods (>= 1)
        replications: Number of independent stationary windows (>= 2)
        seed: Root seed; defaults to Settings.seed

    Returns:
        AggregationCheck; within_bounds is True when the gap is under four standard errors
    """
    seed = get_settings().seed if seed is None else seed
    rng = block_generator(seed, 0)
    noise = draw_innovations(rng, SimulationConfig.model_fields["innovations"].default, (replications, q))

    level = math.sqrt(stationary_variance(params))
    deviation = level * noise[:, 0]
    totals = deviation.copy()
    for t in range(1, q):
        deviation = params.rho * deviation + params.sigma * noise[:, t]
        totals += deviation
    totals += q * params.mu

    empirical = float(np.var(totals, ddof=1))
    theoretical = aggregated_variance_stationary(level, ar1_correlations(params.rho, q), q)
    check = AggregationCheck(
        q=q,
        replications=replications,
        empirical=empirical,
        theoretical=theoretical,
        relative_error=abs(empirical - theoretical) / theoretical,
        standard_error=math.sqrt(2.0 / (replications - 1)),
    )
    logger.debug(f"🎲 Aggregation check q={q}: relative error {check.relative_error:.4f}")
    return check
