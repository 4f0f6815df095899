"""
Student Family

Exact small-sample tests on the studentized Sharpe t = sqrt(N) delta s / sqrt(F), which
follows a Student-t with N - 1 degrees of freedom under the null. The Fisher statistic
t^2 and the Beta statistic nu / (nu + t^2) are monotone transforms of |t| and give the
same p-values as the two-tailed Student test.
"""

import math
from functools import lru_cache
from typing import Any

import numpy as np

from sharpestudio.special.functions import beta_cdf, f_sf, t_inv, t_sf

from .base import SignificanceTest, Tail, TestKind


@lru_cache(maxsize=4096)
def _t_quantile(p: float, nu: float) -> float:
    return t_inv(p, nu)


def _two_sided_t_threshold(alpha: float, nu: float) -> float:
    if alpha >= 1.0:
        return 0.0
    if alpha <= 0.0:
        return math.inf
    return _t_quantile(1.0 - 0.5 * alpha, nu)


class StudentOneTailedTest(SignificanceTest):
    """H1: E[SR] > 0. luck = 1 - T(t; N - 1)."""

    kind = TestKind.STUDENT_ONE_TAILED
    tail = Tail.ONE
    description = "Student t, one-tailed"

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        return self.studentized(sr_annual, delta)

    def luck(self, sr_annual: float) -> float:
        return t_sf(self.studentized(sr_annual), self.spec.dof)

    def min_sharpe(self, confidence: float) -> float:
        self.check_confidence(confidence)
        return self.scale * _t_quantile(confidence, self.spec.dof)

    def critical_statistic(self, alpha: float) -> float:
        if alpha >= 1.0:
            return -math.inf
        if alpha <= 0.0:
            return math.inf
        return _t_quantile(1.0 - alpha, self.spec.dof)


class StudentTwoTailedTest(SignificanceTest):
    """H1: E[SR] != 0. luck = 2 - 2 T(|t|; N - 1)."""

    kind = TestKind.STUDENT_TWO_TAILED
    description = "Student t, two-tailed"

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        return self.studentized(sr_annual, delta)

    def luck(self, sr_annual: float) -> float:
        return 2.0 * t_sf(abs(self.studentized(sr_annual)), self.spec.dof)

    def min_sharpe(self, confidence: float) -> float:
        self.check_confidence(confidence)
        return self.scale * _t_quantile(0.5 * (1.0 + confidence), self.spec.dof)

    def critical_statistic(self, alpha: float) -> float:
        return _two_sided_t_threshold(alpha, self.spec.dof)


class FisherTest(StudentTwoTailedTest):
    """
    Fisher test on t^2 = N delta^2 s^2 / F with (1, N - 1) degrees of freedom.

    Always two-tailed: squaring discards the sign of the Sharpe.
    """

    kind = TestKind.FISHER
    description = "Fisher-Snedecor F(1, N-1) on t^2"

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        t = self.studentized(sr_annual, delta)
        return t * t

    def luck(self, sr_annual: float) -> float:
        return f_sf(self.statistic(sr_annual), 1.0, self.spec.dof)

    def critical_statistic(self, alpha: float) -> float:
        threshold = _two_sided_t_threshold(alpha, self.spec.dof)
        return threshold * threshold


class BetaTest(StudentTwoTailedTest):
    """
    Beta test on z = nu / (nu + t^2), distributed Beta(nu / 2, 1 / 2) under the null.

    Small z is evidence of skill, so the test rejects below its threshold.
    """

    kind = TestKind.BETA
    description = "Beta(nu/2, 1/2) on nu / (nu + t^2)"

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        t = self.studentized(sr_annual, delta)
        nu = self.spec.dof
        return nu / (nu + t * t)

    def luck(self, sr_annual: float) -> float:
        t = float(self.studentized(sr_annual))
        nu = self.spec.dof
        denominator = nu + t * t
        # z rounds to 1 for small t, so its complement is passed separately
        return beta_cdf(nu / denominator, 0.5 * nu, 0.5, complement=t * t / denominator)

    def critical_statistic(self, alpha: float) -> float:
        threshold = _two_sided_t_threshold(alpha, self.spec.dof)
        nu = self.spec.dof
        return nu / (nu + threshold * threshold)

    def rejects(self, sr_annual: np.ndarray, alpha: float, delta: Any = None) -> np.ndarray:
        values = np.asarray(self.statistic(np.asarray(sr_annual, dtype=float), delta))
        return values < self.critical_statistic(alpha)
