"""
Table Specifications

Declarative description of a significance table: which quantity fills the cells, which
test computes it, and the row and column grids. Also holds the colour bands used to
classify cells.
"""

import math
from decimal import Decimal
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from sharpestudio.core.config import PERIODS_PER_YEAR
from sharpestudio.errors import TableSpecError
from sharpestudio.significance.base import TestKind


class TableKind(str, Enum):
    """What a table's cells hold"""

    MIN_SHARPE_BY_SKILL = "min-sharpe-by-skill"  # rows rho, fixed target skill
    MIN_SHARPE_BY_CONFIDENCE = "min-sharpe-by-confidence"  # rows confidence, fixed rho
    SKILL_FOR_SHARPE = "skill-for-sharpe"  # rows rho, fixed Sharpe level


class Frequency(str, Enum):
    """Observation frequency presets with their default N grids"""

    DAILY = "daily"
    MONTHLY = "monthly"

    @property
    def periods_per_year(self) -> float:
        return PERIODS_PER_YEAR[self.value]


DAILY_N_GRID: tuple[int, ...] = (25, 50, *range(100, 1001, 50))
DAILY_N_GRID_WITH_122: tuple[int, ...] = (25, 50, 100, 122, *range(150, 1001, 50))
MONTHLY_N_GRID: tuple[int, ...] = tuple(range(6, 121, 6))
RHO_GRID: tuple[float, ...] = tuple(k / 10 for k in range(-9, 10))


def _confidence_percents() -> tuple[Decimal, ...]:
    percents = [Decimal(80), Decimal(85), Decimal(90)]
    percents += [Decimal(p) for p in range(91, 100)]
    # 99.1 .. 99.9, 99.91 .. 99.99, down to 99.9991 .. 99.9999
    for places in range(1, 5):
        step = Decimal(1).scaleb(-places)
        base = Decimal(100) - 10 * step
        percents += [base + step * k for k in range(1, 10)]
    return tuple(percents)


CONFIDENCE_PERCENTS: tuple[Decimal, ...] = _confidence_percents()
CONFIDENCE_GRID: tuple[float, ...] = tuple(float(p / 100) for p in CONFIDENCE_PERCENTS)


def default_n_grid(frequency: Frequency, kind: TableKind = TableKind.MIN_SHARPE_BY_SKILL) -> tuple[int, ...]:
    """N grid printed for a frequency; confidence tables add N = 122 to the daily grid."""
    if frequency is Frequency.MONTHLY:
        return MONTHLY_N_GRID
    if kind is TableKind.MIN_SHARPE_BY_CONFIDENCE:
        return DAILY_N_GRID_WITH_122
    return DAILY_N_GRID


class SrBand(str, Enum):
    """Sharpe colour bands, upper bounds inclusive"""

    SR0 = "sr-0"  # SR <= 0.50
    SR1 = "sr-1"  # 0.50 < SR <= 1.00
    SR2 = "sr-2"  # 1.00 < SR <= 1.50
    SR3 = "sr-3"  # 1.50 < SR <= 2.00
    SR4 = "sr-4"  # SR > 2.00


class ProbBand(str, Enum):
    """Probability colour bands, lower bounds inclusive"""

    P0 = "p-0"  # < 80%
    P1 = "p-1"  # 80% <= p < 90%
    P2 = "p-2"  # 90% <= p < 95%
    P3 = "p-3"  # 95% <= p < 97.5%
    P4 = "p-4"  # 97.5% <= p < 99%
    P5 = "p-5"  # p >= 99%


SR_BAND_RGB: dict[SrBand, tuple[float, float, float] | None] = {
    SrBand.SR0: None,
    SrBand.SR1: (1.0, 0.922, 0.922),
    SrBand.SR2: (1.0, 0.686, 0.686),
    SrBand.SR3: (1.0, 0.475, 0.475),
    SrBand.SR4: (1.0, 0.247, 0.247),
}

PROB_BAND_RGB: dict[ProbBand, tuple[float, float, float] | None] = {
    ProbBand.P0: None,
    ProbBand.P1: (0.788, 1.0, 0.882),
    ProbBand.P2: (0.592, 1.0, 0.776),
    ProbBand.P3: (0.114, 1.0, 0.514),
    ProbBand.P4: (0.0, 0.855, 0.388),
    ProbBand.P5: (0.0, 0.69, 0.314),
}

_SR_UPPER_BOUNDS = ((0.5, SrBand.SR0), (1.0, SrBand.SR1), (1.5, SrBand.SR2), (2.0, SrBand.SR3))
_PROB_LOWER_BOUNDS = ((99.0, ProbBand.P5), (97.5, ProbBand.P4), (95.0, ProbBand.P3), (90.0, ProbBand.P2), (80.0, ProbBand.P1))


def sr_band(value: float) -> SrBand:
    """Colour band of a Sharpe value; 2.00 belongs to the 1.50 < SR <= 2.00 band."""
    for upper, band in _SR_UPPER_BOUNDS:
        if value <= upper:
            return band
    return SrBand.SR4


def prob_band(percent: float) -> ProbBand:
    """Colour band of a probability expressed in percent."""
    for lower, band in _PROB_LOWER_BOUNDS:
        if percent >= lower:
            return band
    return ProbBand.P0


def _strictly_increasing(values: tuple[Any, ...]) -> bool:
    return all(a < b for a, b in zip(values, values[1:], strict=False))


class TableSpec(BaseModel):
    """
    Declarative description of one table.

    Attributes:
        kind: What the cells hold
        test: Significance test computing the cells
        frequency: Frequency preset, or None for a custom periods_per_year
        periods_per_year: Annualization factor F
        target: Skill level (min-sharpe-by-skill) or Sharpe level (skill-for-sharpe)
        rho: Autocorrelation of min-sharpe-by-confidence tables
        rho_grid: Row values of rho tables
        confidence_grid: Row values of confidence tables
        n_grid: Column values (number of observations)
        printed_modified: Forwarded to the modified Wald test
        name: Optional catalog name
        title: Optional caption
    """

    model_config = ConfigDict(frozen=True)

    kind: TableKind
    test: TestKind
    frequency: Frequency | None = Field(default=Frequency.DAILY)
    periods_per_year: float = Field(default=0.0, description="Defaults to the frequency's F.")
    target: float | None = None
    rho: float = Field(default=0.0, gt=-1.0, lt=1.0)
    rho_grid: tuple[float, ...] = RHO_GRID
    confidence_grid: tuple[float, ...] = CONFIDENCE_GRID
    n_grid: tuple[int, ...] = ()
    printed_modified: bool = False
    name: str | None = None
    title: str | None = None

    @model_validator(mode="before")
    @classmethod
    def _fill_defaults(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        data = dict(data)
        frequency = data.get("frequency", Frequency.DAILY)
        kind = TableKind(data["kind"]) if "kind" in data else None
        if frequency is not None and not data.get("periods_per_year"):
            data["periods_per_year"] = Frequency(frequency).periods_per_year
        if data.get("n_grid") is None and frequency is not None and kind is not None:
            data["n_grid"] = default_n_grid(Frequency(frequency), kind)
        return data

    @model_validator(mode="after")
    def _check(self) -> "TableSpec":
        if not self.periods_per_year > 0.0:
            raise ValueError("periods_per_year must be > 0")
        if not self.n_grid or not _strictly_increasing(self.n_grid):
            raise ValueError("n_grid must be nonempty and strictly increasing")
        if self.n_grid[0] < 2:
            raise ValueError("every N in n_grid must be >= 2")

        if self.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE:
            if not self.confidence_grid or not _strictly_increasing(self.confidence_grid):
                raise ValueError("confidence_grid must be nonempty and strictly increasing")
            if not (0.0 < self.confidence_grid[0] and self.confidence_grid[-1] < 1.0):
                raise ValueError("confidences must lie strictly between 0 and 1")
        else:
            if not self.rho_grid or not _strictly_increasing(self.rho_grid):
                raise ValueError("rho_grid must be nonempty and strictly increasing")
            if abs(self.rho_grid[0]) >= 1.0 or abs(self.rho_grid[-1]) >= 1.0:
                raise ValueError("rho values must satisfy |rho| < 1")
            if self.target is None or not math.isfinite(self.target):
                raise ValueError(f"{self.kind.value} tables need a finite target")
            if self.kind is TableKind.MIN_SHARPE_BY_SKILL and not 0.0 < self.target < 1.0:
                raise ValueError("target skill must lie strictly between 0 and 1")
        return self

    @classmethod
    def create(cls, **fields: Any) -> "TableSpec":
        """Build a spec, reporting validation failures as TableSpecError."""
        try:
            return cls(**fields)
        except ValidationError as e:
            raise TableSpecError(f"Invalid table specification: {e.errors()[0]['msg']}") from None

    @property
    def row_values(self) -> tuple[float, ...]:
        if self.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE:
            return self.confidence_grid
        return self.rho_grid

    @property
    def holds_probabilities(self) -> bool:
        return self.kind is TableKind.SKILL_FOR_SHARPE

    @property
    def frequency_label(self) -> str:
        return self.frequency.value if self.frequency is not None else f"f{self.periods_per_year:g}"

    @property
    def target_label(self) -> str:
        if self.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE:
            return f"rho{self.rho:g}"
        if self.kind is TableKind.MIN_SHARPE_BY_SKILL:
            return f"skill{float(Decimal(repr(self.target)) * 100):g}"
        return f"sr{self.target:g}"

    @property
    def file_stem(self) -> str:
        """<kind>_<test>_<tail>_<freq>_<target>"""
        return "_".join(
            (self.kind.value, self.test.family, self.test.tail.value, self.frequency_label, self.target_label)
        )
