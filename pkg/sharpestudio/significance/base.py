"""
Base Significance Test

Defines the test specification and result models and the abstract base class every
significance test implements. A test answers three questions about an annualized
Sharpe ratio observed over N periods: its statistic, the probability that luck alone
explains it, and the smallest Sharpe that reaches a target confidence.
"""

import math
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, ClassVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from sharpestudio.autocorr.aggregation import delta
from sharpestudio.errors import DomainError


class Tail(str, Enum):
    """Alternative hypothesis: E[SR] > 0 (one) or E[SR] != 0 (two)"""

    ONE = "one"
    TWO = "two"


class TestKind(str, Enum):
    """Registered test identifiers"""

    __test__ = False

    STUDENT_ONE_TAILED = "student-one-tailed"
    STUDENT_TWO_TAILED = "student-two-tailed"
    FISHER = "fisher"
    WALD_RAW = "wald-raw"
    WALD_STUDENTIZED = "wald-studentized"
    WALD_MODIFIED = "wald-modified"
    BETA = "beta"

    @property
    def family(self) -> str:
        return "student" if self.value.startswith("student") else self.value

    @property
    def tail(self) -> Tail:
        return Tail.ONE if self is TestKind.STUDENT_ONE_TAILED else Tail.TWO


def coerce_test(test: TestKind | str) -> TestKind | str:
    """Built-in names come back as TestKind, plugged-in names as lowercase strings."""
    if isinstance(test, TestKind):
        return test
    name = str(test).strip().lower()
    try:
        return TestKind(name)
    except ValueError:
        return name


def registry_key(test: TestKind | str) -> str:
    """Registry key of a test identifier."""
    test = coerce_test(test)
    return test.value if isinstance(test, TestKind) else test


class TestSpec(BaseModel):
    """
    Which test to run and on what sample.

    Attributes:
        test: Test identifier
        n: Number of observations N
        periods_per_year: Annualization factor F
        rho: First-order autocorrelation; sets delta = delta(rho, F)
        printed_modified: Use the annualized correction term in the modified Wald test
    """

    __test__ = False  # not a pytest class

    model_config = ConfigDict(frozen=True)

    test: TestKind | str
    n: int = Field(..., ge=2, description="Number of observations.")
    periods_per_year: float = Field(..., gt=0.0, description="Periods per year (F).")
    rho: float = Field(default=0.0, gt=-1.0, lt=1.0, description="First-order autocorrelation.")
    printed_modified: bool = Field(default=False, description="Printed form of the modified Wald test.")

    @field_validator("test", mode="before")
    @classmethod
    def _known_form(cls, test: Any) -> Any:
        if isinstance(test, str) and not test.strip():
            raise ValueError("test name must not be empty")
        return coerce_test(test) if isinstance(test, str) else test

    @property
    def delta(self) -> float:
        return delta(self.rho, self.periods_per_year)

    @property
    def dof(self) -> float:
        return float(self.n - 1)

    @property
    def tail(self) -> Tail:
        from sharpestudio.significance import test_registry

        return test_registry.get(self.test).tail


class TestResult(BaseModel):
    """
    Outcome of a test on one observed Sharpe ratio.

    Attributes:
        test: Test identifier
        statistic: Value of the test statistic
        luck: p-value under H0: E[SR] = 0
        skill: 1 - luck
    """

    __test__ = False

    model_config = ConfigDict(frozen=True)

    test: TestKind | str
    statistic: float
    luck: float = Field(..., ge=0.0, le=1.0)
    skill: float = Field(..., ge=0.0, le=1.0)


def clamp_probability(value: float) -> float:
    """Clip floating-point noise back into [0, 1]."""
    return min(1.0, max(0.0, value))


class SignificanceTest(ABC):
    """
    Abstract base class for a significance test bound to one TestSpec.

    Subclasses set ``kind`` (and ``tail`` when one-tailed) and implement ``statistic``,
    ``luck``, ``min_sharpe`` and ``critical_statistic``. The statistic accepts floats or
    numpy arrays so that Monte Carlo calibration can evaluate whole blocks of paths at once.
    """

    kind: ClassVar[TestKind | str]
    tail: ClassVar[Tail] = Tail.TWO
    description: ClassVar[str] = ""

    def __init__(self, spec: TestSpec):
        self.spec = spec

    @property
    def scale(self) -> float:
        """sqrt(F) / (delta sqrt(N)): converts a per-period t-statistic into an annualized Sharpe."""
        return math.sqrt(self.spec.periods_per_year) / (self.spec.delta * math.sqrt(self.spec.n))

    def studentized(self, sr_annual: Any, delta: Any = None) -> Any:
        """
        sqrt(N) * delta * s / sqrt(F), the per-period t-statistic of an annualized Sharpe.

        A delta array (one per path) overrides the spec's delta.
        """
        factor = self.spec.delta if delta is None else delta
        return sr_annual * math.sqrt(self.spec.n) * factor / math.sqrt(self.spec.periods_per_year)

    @abstractmethod
    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        """Test statistic for an annualized Sharpe (float or array)."""

    @abstractmethod
    def luck(self, sr_annual: float) -> float:
        """p-value of the observed annualized Sharpe under the null."""

    @abstractmethod
    def min_sharpe(self, confidence: float) -> float:
        """Smallest annualized Sharpe whose skill reaches the confidence level."""

    @abstractmethod
    def critical_statistic(self, alpha: float) -> float:
        """Threshold on the statistic beyond which luck < alpha."""

    def skill(self, sr_annual: float) -> float:
        return clamp_probability(1.0 - self.luck(sr_annual))

    def rejects(self, sr_annual: np.ndarray, alpha: float, delta: Any = None) -> np.ndarray:
        """
        Vectorised decision luck < alpha for an array of annualized Sharpe ratios.

        Two-tailed tests compare |statistic| with the threshold, one-tailed tests the
        signed statistic.
        """
        values = np.asarray(self.statistic(np.asarray(sr_annual, dtype=float), delta))
        threshold = self.critical_statistic(alpha)
        if self.tail is Tail.TWO:
            return np.abs(values) > threshold
        return values > threshold

    def evaluate(self, sr_annual: float) -> TestResult:
        """Bundle statistic, luck and skill for one observed Sharpe."""
        luck = clamp_probability(self.luck(sr_annual))
        return TestResult(
            test=self.spec.test,
            statistic=float(self.statistic(sr_annual)),
            luck=luck,
            skill=clamp_probability(1.0 - luck),
        )

    @staticmethod
    def check_confidence(confidence: float) -> None:
        if not 0.0 < confidence < 1.0:
            raise DomainError(f"confidence must lie strictly between 0 and 1, got {confidence}")
