"""
SharpeStudio Significance Tests

Registry of significance tests and the module-level operations built on it.
"""

import logging
from dataclasses import dataclass

from pydantic import ValidationError

from sharpestudio.errors import DomainError

from .base import (
    SignificanceTest,
    Tail,
    TestKind,
    TestResult,
    TestSpec,
    clamp_probability,
    coerce_test,
    registry_key,
)
from .student import BetaTest, FisherTest, StudentOneTailedTest, StudentTwoTailedTest
from .wald import WaldModifiedTest, WaldRawTest, WaldStudentizedTest

logger = logging.getLogger(__name__)


class TestRegistry:
    """Registry for significance tests"""

    __test__ = False

    def __init__(self):
        self._tests: dict[str, type[SignificanceTest]] = {}
        self._register_defaults()

    def _register_defaults(self):
        """Register the built-in tests"""
        for test_class in (
            StudentOneTailedTest,
            StudentTwoTailedTest,
            FisherTest,
            WaldRawTest,
            WaldStudentizedTest,
            WaldModifiedTest,
            BetaTest,
        ):
            self.register(test_class.kind, test_class)

    def register(self, kind: TestKind | str, test_class: type[SignificanceTest]):
        """Register a test class under a built-in kind or a new name"""
        if not (isinstance(test_class, type) and issubclass(test_class, SignificanceTest)):
            raise DomainError(f"{test_class} must inherit from SignificanceTest")
        name = registry_key(kind)
        if not name:
            raise DomainError("test name must not be empty")

        self._tests[name] = test_class
        logger.debug(f"📝 Registered test: {name} -> {test_class.__name__}")

    def get(self, kind: TestKind | str) -> type[SignificanceTest]:
        """Get a test class by kind"""
        try:
            return self._tests[registry_key(kind)]
        except KeyError:
            raise DomainError(f"Unknown test: {kind}. Available: {self.list_available()}") from None

    def create(self, spec: TestSpec) -> SignificanceTest:
        """Create a test bound to a spec"""
        return self.get(spec.test)(spec)

    def unregister(self, kind: TestKind | str):
        """Remove a plugged-in test; built-in kinds can only be replaced"""
        name = registry_key(kind)
        if isinstance(coerce_test(name), TestKind):
            raise DomainError(f"Built-in test {name} cannot be removed, register a replacement instead")
        if self._tests.pop(name, None) is None:
            raise DomainError(f"Unknown test: {kind}. Available: {self.list_available()}")
        logger.debug(f"🗑️ Unregistered test: {name}")

    def list_available(self) -> list[str]:
        """List available test names"""
        return list(self._tests)


# Global registry instance
test_registry = TestRegistry()

DEFAULT_REPORT_TESTS: tuple[TestKind, ...] = (
    TestKind.STUDENT_ONE_TAILED,
    TestKind.STUDENT_TWO_TAILED,
    TestKind.FISHER,
    TestKind.WALD_RAW,
    TestKind.WALD_STUDENTIZED,
    TestKind.WALD_MODIFIED,
)

# (family, tail) accepted on the command line
_FAMILY_TAILS: dict[tuple[str, Tail], TestKind] = {
    ("student", Tail.ONE): TestKind.STUDENT_ONE_TAILED,
    ("student", Tail.TWO): TestKind.STUDENT_TWO_TAILED,
    ("fisher", Tail.TWO): TestKind.FISHER,
    ("wald-raw", Tail.TWO): TestKind.WALD_RAW,
    ("wald", Tail.TWO): TestKind.WALD_STUDENTIZED,
    ("wald-studentized", Tail.TWO): TestKind.WALD_STUDENTIZED,
    ("wald-modified", Tail.TWO): TestKind.WALD_MODIFIED,
    ("beta", Tail.TWO): TestKind.BETA,
}
TEST_FAMILIES: tuple[str, ...] = tuple(dict.fromkeys(family for family, _ in _FAMILY_TAILS))


def resolve_test(family: str, tail: Tail | str = Tail.TWO) -> TestKind | str:
    """
    Map a test family and tail to a registered test.

    Names of plugged-in tests resolve to themselves when their tail matches.

    Raises:
        DomainError: For unknown families or a one-tailed request on a two-tailed-only test
    """
    try:
        key = (family.lower(), Tail(tail))
    except ValueError:
        raise DomainError(f"Unknown tail: {tail}. Use 'one' or 'two'") from None
    if key in _FAMILY_TAILS:
        return _FAMILY_TAILS[key]
    if key[0] in test_registry.list_available() and test_registry.get(key[0]).tail is key[1]:
        return coerce_test(key[0])
    raise DomainError(f"No {Tail(tail).value}-tailed variant of test {family!r}. Available: {list(TEST_FAMILIES)}")


def make_spec(
    test: TestKind | str,
    n: int,
    periods_per_year: float,
    rho: float = 0.0,
    printed_modified: bool = False,
) -> TestSpec:
    """
    Build a TestSpec, reporting validation failures as DomainError.

    Raises:
        DomainError: If n < 2, F <= 0, |rho| >= 1 or the test is unknown
    """
    try:
        spec = TestSpec(
            test=test,
            n=n,
            periods_per_year=periods_per_year,
            rho=rho,
            printed_modified=printed_modified,
        )
    except ValidationError as e:
        raise DomainError(f"Invalid test specification: {e.errors()[0]['msg']} ({e.errors()[0]['loc']})") from None
    test_registry.get(spec.test)
    return spec


def studentized_statistic(sr_annual: float, spec: TestSpec) -> float:
    """sqrt(N) * delta * s / sqrt(F): the per-period t-statistic implied by an annualized Sharpe."""
    return float(test_registry.create(spec).studentized(sr_annual))


def luck_p_value(sr_annual: float, spec: TestSpec) -> float:
    """
    Probability of observing a Sharpe at least this extreme by chance.

    Args:
        sr_annual: Observed annualized Sharpe ratio s
        spec: Test and sample description

    Returns:
        p-value under H0: E[SR] = 0, clamped to [0, 1]
    """
    return clamp_probability(test_registry.create(spec).luck(sr_annual))


def skill(sr_annual: float, spec: TestSpec) -> float:
    """Skill probability, 1 - luck_p_value."""
    return clamp_probability(1.0 - luck_p_value(sr_annual, spec))


def min_sharpe(spec: TestSpec, confidence: float) -> float:
    """
    Smallest annualized Sharpe ratio whose skill reaches the confidence level.

    Args:
        spec: Test and sample description
        confidence: Target skill C, 0 < C < 1

    Returns:
        Minimum annualized Sharpe ratio

    Raises:
        DomainError: If C is outside (0, 1)
        UnreachableConfidenceError: If the modified Wald test cannot reach C at this N
    """
    return test_registry.create(spec).min_sharpe(confidence)


def critical_statistic(spec: TestSpec, alpha: float) -> float:
    """Threshold on the test statistic beyond which luck < alpha."""
    return test_registry.create(spec).critical_statistic(alpha)


def evaluate(sr_annual: float, spec: TestSpec) -> TestResult:
    """Statistic, luck and skill for one observed annualized Sharpe."""
    return test_registry.create(spec).evaluate(sr_annual)


@dataclass(frozen=True)
class RoundTripCheck:
    """
    Result of inverting a confidence level and testing the resulting Sharpe.

    Attributes:
        confidence: Requested confidence C
        min_sharpe: Solved minimum Sharpe
        recovered: skill(min_sharpe)
    """

    confidence: float
    min_sharpe: float
    recovered: float

    @property
    def error(self) -> float:
        return abs(self.recovered - self.confidence)

    def holds(self, tolerance: float = 1e-10) -> bool:
        return self.error <= tolerance


def round_trip_consistency(spec: TestSpec, confidence: float) -> RoundTripCheck:
    """
    Check that skill(min_sharpe(spec, C), spec) recovers C.

    Raises:
        Whatever min_sharpe raises
    """
    threshold = min_sharpe(spec, confidence)
    return RoundTripCheck(confidence=confidence, min_sharpe=threshold, recovered=skill(threshold, spec))


__all__ = [
    "BetaTest",
    "DEFAULT_REPORT_TESTS",
    "FisherTest",
    "RoundTripCheck",
    "SignificanceTest",
    "StudentOneTailedTest",
    "StudentTwoTailedTest",
    "TEST_FAMILIES",
    "Tail",
    "TestKind",
    "TestRegistry",
    "TestResult",
    "TestSpec",
    "WaldModifiedTest",
    "WaldRawTest",
    "WaldStudentizedTest",
    "coerce_test",
    "critical_statistic",
    "evaluate",
    "luck_p_value",
    "make_spec",
    "registry_key",
    "min_sharpe",
    "resolve_test",
    "round_trip_consistency",
    "skill",
    "studentized_statistic",
    "test_registry",
]
