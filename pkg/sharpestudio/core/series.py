"""
Observation Series

Per-period returns or PnL values with their periodicity, plus the Sharpe estimators
and annualization rules built on them.
"""

import logging
import math
from collections.abc import Sequence
from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from sharpestudio.autocorr.aggregation import delta
from sharpestudio.autocorr.estimation import estimate_rho
from sharpestudio.errors import DegenerateSeriesError, DomainError, SeriesParseError

logger = logging.getLogger(__name__)


class SeriesKind(str, Enum):
    """What the observations measure"""

    RETURNS = "returns"
    PNL = "pnl"


class ObservationSeries(BaseModel):
    """
    Ordered per-period observations.

    Attributes:
        values: Simple returns as decimals, or PnL in currency units
        kind: Returns or PnL
        periods_per_year: Annualization factor F (252 daily, 12 monthly, or a custom d/yf)
        risk_free_per_period: Per-period risk-free rate subtracted from the mean return
        dates: Optional labels carried through from the input file, never interpreted
    """

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...] = Field(..., min_length=2, description="Per-period observations.")
    kind: SeriesKind = Field(default=SeriesKind.RETURNS)
    periods_per_year: float = Field(default=252.0, gt=0.0, description="Periods per year (F).")
    risk_free_per_period: float = Field(default=0.0, description="Per-period risk-free rate.")
    dates: tuple[str, ...] | None = Field(default=None, description="Optional date labels.")

    @field_validator("values")
    @classmethod
    def _finite(cls, values: tuple[float, ...]) -> tuple[float, ...]:
        for index, value in enumerate(values):
            if not math.isfinite(value):
                raise ValueError(f"observation {index + 1} is not finite: {value}")
        return values

    @property
    def n(self) -> int:
        return len(self.values)

    def to_numpy(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


class SharpeEstimate(BaseModel):
    """
    Sharpe ratio of a series at per-period and annual scale.

    Attributes:
        n: Number of observations
        sr_period: Per-period Sharpe ratio
        sr_annual_sqrt: Square-root-rule annualization, sqrt(F) * sr_period
        sr_annual_adjusted: Autocorrelation-corrected annualization, sr_annual_sqrt / delta
        rho: Autocorrelation used for the correction
        delta: Correction factor delta(rho, F)
        eta: Non-centrality sqrt(n) * sr_period
    """

    model_config = ConfigDict(frozen=True)

    n: int
    sr_period: float
    sr_annual_sqrt: float
    sr_annual_adjusted: float
    rho: float
    delta: float = Field(..., gt=0.0)
    eta: float


def sample_mean(series: ObservationSeries) -> float:
    """Arithmetic mean of the observations."""
    if series.n < 1:
        raise DegenerateSeriesError("mean of an empty series")
    return float(np.mean(series.to_numpy()))


def sample_std(series: ObservationSeries) -> float:
    """
    Unbiased sample standard deviation with the two-pass centered formula.

    Raises:
        DegenerateSeriesError: If fewer than two observations are given
    """
    if series.n < 2:
        raise DegenerateSeriesError(f"sample standard deviation needs at least 2 observations, got {series.n}")
    values = series.to_numpy()
    if np.ptp(values) == 0.0:
        return 0.0
    centered = values - values.mean()
    return float(np.sqrt(np.sum(centered * centered) / (series.n - 1)))


def _nonzero_std(series: ObservationSeries) -> float:
    std = sample_std(series)
    if std == 0.0:
        logger.error("❌ Series has zero variance")
        raise DegenerateSeriesError("series has zero variance; its Sharpe ratio is undefined")
    return std


def sharpe_per_period(series: ObservationSeries) -> float:
    """
    Per-period Sharpe ratio (mean - r_f) / std.

    Raises:
        DomainError: If the series holds PnL rather than returns
        DegenerateSeriesError: If the series has zero variance
    """
    if series.kind is not SeriesKind.RETURNS:
        raise DomainError("sharpe_per_period expects a returns series; use capital_dimensionless_sharpe for PnL")
    std = _nonzero_std(series)
    return (sample_mean(series) - series.risk_free_per_period) / std


def sharpe_from_components(series: ObservationSeries) -> float:
    """
    Per-period Sharpe written on individual returns,
    sqrt(n - 1) * sum(R_i - R_f) / (n * sqrt(sum (R_i - mean)^2)).

    Algebraically identical to sharpe_per_period.
    """
    values = series.to_numpy()
    n = series.n
    centered = values - values.mean()
    spread = math.sqrt(float(np.sum(centered * centered)))
    if spread == 0.0 or np.ptp(values) == 0.0:
        raise DegenerateSeriesError("series has zero variance; its Sharpe ratio is undefined")
    excess = float(np.sum(values - series.risk_free_per_period))
    return math.sqrt(n - 1) * excess / (n * spread)


def capital_dimensionless_sharpe(series: ObservationSeries) -> float:
    """
    Annualized Sharpe of a PnL series, sqrt(F) * mean(P) / std(P).

    Independent of the capital behind the PnL: scaling every value leaves it unchanged.

    Raises:
        DomainError: If the series holds returns rather than PnL
        DegenerateSeriesError: If the PnL has zero variance
    """
    if series.kind is not SeriesKind.PNL:
        raise DomainError("capital_dimensionless_sharpe expects a PnL series")
    std = _nonzero_std(series)
    return math.sqrt(series.periods_per_year) * sample_mean(series) / std


def annualize_sqrt(sr_period: float, periods_per_year: float) -> float:
    """Square-root-of-time annualization, sqrt(F) * sr_period."""
    if not periods_per_year > 0.0:
        raise DomainError(f"periods_per_year must be > 0, got {periods_per_year}")
    return math.sqrt(periods_per_year) * sr_period


def annualize_adjusted(sr_period: float, periods_per_year: float, rho: float) -> float:
    """
    Autocorrelation-aware annualization, sqrt(F) * sr_period / delta(rho, F).

    Positive autocorrelation lowers the result below the square-root rule, negative
    autocorrelation raises it.

    Raises:
        DomainError: If |rho| >= 1
    """
    return annualize_sqrt(sr_period, periods_per_year) / delta(rho, periods_per_year)


def estimate_sharpe(
    series: ObservationSeries,
    rho: float | None = None,
    method: str = "recipe",
    as_printed: bool = False,
) -> SharpeEstimate:
    """
    Fill a SharpeEstimate for a series.

    Args:
        series: Returns or PnL observations
        rho: Known autocorrelation; estimated from the series when None
        method: Estimator for rho when it is not given ("recipe" or "lag1")
        as_printed: Forwarded to the recipe

    Returns:
        SharpeEstimate

    Raises:
        DegenerateSeriesError: On zero variance, or too few points to estimate rho
    """
    if series.kind is SeriesKind.RETURNS:
        sr_period = sharpe_per_period(series)
    else:
        sr_period = sample_mean(series) / _nonzero_std(series)

    if rho is None:
        rho = estimate_rho(series, method=method, as_printed=as_printed)

    factor = delta(rho, series.periods_per_year)
    sr_annual_sqrt = annualize_sqrt(sr_period, series.periods_per_year)
    return SharpeEstimate(
        n=series.n,
        sr_period=sr_period,
        sr_annual_sqrt=sr_annual_sqrt,
        sr_annual_adjusted=sr_annual_sqrt / factor,
        rho=rho,
        delta=factor,
        eta=math.sqrt(series.n) * sr_period,
    )


def from_prices(
    prices: Sequence[float],
    log_returns: bool = True,
    periods_per_year: float = 252.0,
    risk_free_per_period: float = 0.0,
    dates: Sequence[str] | None = None,
) -> ObservationSeries:
    """
    Convert a price path into per-period returns.

    Args:
        prices: Positive prices, oldest first
        log_returns: ln(P_t / P_{t-1}) when True, P_t / P_{t-1} - 1 otherwise
        periods_per_year: Annualization factor of the resulting series
        risk_free_per_period: Per-period risk-free rate
        dates: Optional labels aligned with the prices; the first one is dropped

    Returns:
        ObservationSeries with len(prices) - 1 returns

    Raises:
        DomainError: If a price is not positive
        DegenerateSeriesError: If fewer than three prices are given
    """
    path = np.asarray(prices, dtype=float)
    if path.shape[0] < 3:
        raise DegenerateSeriesError(f"need at least 3 prices to build 2 returns, got {path.shape[0]}")
    if np.any(path <= 0.0):
        raise DomainError("prices must be positive")

    returns = np.diff(np.log(path)) if log_returns else path[1:] / path[:-1] - 1.0
    return ObservationSeries(
        values=tuple(returns.tolist()),
        kind=SeriesKind.RETURNS,
        periods_per_year=periods_per_year,
        risk_free_per_period=risk_free_per_period,
        dates=tuple(dates[1:]) if dates is not None else None,
    )


def _parse_number(raw: str, row: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise SeriesParseError(f"cannot parse {raw!r} as a number", row=row) from None
    if not math.isfinite(value):
        raise SeriesParseError(f"value {raw!r} is not finite", row=row)
    return value


# column names accepted on a header row
_DATE_COLUMNS = frozenset({"date", "time", "timestamp", "datetime", "day", "period"})
_VALUE_COLUMNS = frozenset({"value", "values", "return", "returns", "ret", "pnl", "p&l", "price", "prices", "close", "nav"})


def _looks_numeric(raw: str) -> bool:
    try:
        float(raw)
    except ValueError:
        return False
    return True


def _header_value_column(record: list[str]) -> int | None:
    """Index of the value column when the row is a header, None when it holds data."""
    names = [cell.lower() for cell in record]
    if any(not cell or _looks_numeric(cell) for cell in names):
        return None
    if any(name not in _DATE_COLUMNS | _VALUE_COLUMNS for name in names):
        raise SeriesParseError(f"unrecognised header or non-numeric data: {record}", row=1)
    if "value" in names:
        return names.index("value")
    for index, name in enumerate(names):
        if name in _VALUE_COLUMNS:
            return index
    raise SeriesParseError(f"header names no value column: {record}", row=1)


def load_series(
    path: str | Path,
    kind: SeriesKind | str = SeriesKind.RETURNS,
    periods_per_year: float = 252.0,
    risk_free_per_period: float = 0.0,
    prices: bool = False,
) -> ObservationSeries:
    """
    Read observations from a CSV file.

    The file has an optional header and either one column (value) or two columns
    (date,value). The first row is a header only when none of its cells parse as numbers
    and every cell is a known column name (date, value, returns, pnl, price and similar);
    a column named "value" is preferred. Dates are carried through but never interpreted.

    Args:
        path: CSV file (UTF-8, comma separated, dot decimal, LF or CRLF)
        kind: Returns or PnL
        periods_per_year: Annualization factor F
        risk_free_per_period: Per-period risk-free rate
        prices: Treat the values as prices and convert them to log returns

    Returns:
        ObservationSeries

    Raises:
        SeriesParseError: If the file is unreadable or a row is malformed (the message names the row)
        DegenerateSeriesError: If fewer than two observations remain
    """
    try:
        frame = pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise SeriesParseError(f"{path} contains no data") from None
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise SeriesParseError(f"{path} is not a valid CSV file: {e}") from e
    except OSError as e:
        raise SeriesParseError(f"cannot read {path}: {e}") from e

    if frame.shape[1] not in (1, 2):
        raise SeriesParseError(f"expected 1 column (value) or 2 columns (date,value), got {frame.shape[1]}")

    # short rows come back padded with NaN
    frame = frame.fillna("")
    rows = [[str(cell).strip() for cell in record] for record in frame.itertuples(index=False, name=None)]
    value_column = frame.shape[1] - 1
    first_data_row = 0
    header_column = _header_value_column(rows[0]) if rows else None
    if header_column is not None:
        value_column = header_column
        first_data_row = 1

    values: list[float] = []
    dates: list[str] = []
    for index in range(first_data_row, len(rows)):
        record = rows[index]
        if any(cell == "" for cell in record):
            raise SeriesParseError("missing field", row=index + 1)
        values.append(_parse_number(record[value_column], row=index + 1))
        if frame.shape[1] == 2:
            dates.append(record[1 - value_column])

    logger.debug(f"📊 Loaded {len(values)} observations from {path}")

    labels = tuple(dates) if dates else None
    if prices:
        return from_prices(
            values,
            log_returns=True,
            periods_per_year=periods_per_year,
            risk_free_per_period=risk_free_per_period,
            dates=labels,
        )

    if len(values) < 2:
        raise DegenerateSeriesError(f"need at least 2 observations, got {len(values)}")
    return ObservationSeries(
        values=tuple(values),
        kind=SeriesKind(kind),
        periods_per_year=periods_per_year,
        risk_free_per_period=risk_free_per_period,
        dates=labels,
    )
