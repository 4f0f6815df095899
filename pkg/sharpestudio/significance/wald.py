"""
Wald Family

Large-sample normal approximations, all two-tailed:

- raw: s sqrt(N) / sqrt(F), ignoring autocorrelation
- studentized: the delta-corrected t-statistic against a standard normal
- modified: t c / sqrt(1 + K t^2) with c = 1 - 1/(4(N - 1)), a closer normal
  approximation of the Student law. K = 1 / (2(N - 1)) by default; the strict form
  puts the annualized s^2 delta^2 in the correction, which is K = F / (2(N - 1)).
"""

import logging
import math
from functools import lru_cache
from typing import Any

import numpy as np

from sharpestudio.errors import UnreachableConfidenceError
from sharpestudio.special.functions import normal_inv, normal_sf

from .base import SignificanceTest, TestKind

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _normal_quantile(p: float) -> float:
    return normal_inv(p)


def _two_sided_z(alpha: float) -> float:
    if alpha >= 1.0:
        return 0.0
    if alpha <= 0.0:
        return math.inf
    return _normal_quantile(1.0 - 0.5 * alpha)


class WaldRawTest(SignificanceTest):
    """Normal test on s sqrt(N) / sqrt(F); no autocorrelation correction."""

    kind = TestKind.WALD_RAW
    description = "Wald, raw (no delta)"

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        # no autocorrelation correction: delta is ignored
        return sr_annual * math.sqrt(self.spec.n) / math.sqrt(self.spec.periods_per_year)

    def luck(self, sr_annual: float) -> float:
        return 2.0 * normal_sf(abs(self.statistic(sr_annual)))

    def min_sharpe(self, confidence: float) -> float:
        self.check_confidence(confidence)
        z = _normal_quantile(0.5 * (1.0 + confidence))
        return math.sqrt(self.spec.periods_per_year) / math.sqrt(self.spec.n) * z

    def critical_statistic(self, alpha: float) -> float:
        return _two_sided_z(alpha)


class WaldStudentizedTest(SignificanceTest):
    """Normal test on the delta-corrected t-statistic."""

    kind = TestKind.WALD_STUDENTIZED
    description = "Wald, studentized with delta"

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        return self.studentized(sr_annual, delta)

    def luck(self, sr_annual: float) -> float:
        return 2.0 * normal_sf(abs(self.studentized(sr_annual)))

    def min_sharpe(self, confidence: float) -> float:
        self.check_confidence(confidence)
        return self.scale * _normal_quantile(0.5 * (1.0 + confidence))

    def critical_statistic(self, alpha: float) -> float:
        return _two_sided_z(alpha)


class WaldModifiedTest(SignificanceTest):
    """
    Normal test on m = t c / sqrt(1 + K t^2).

    m is bounded by c / sqrt(K), so confidence levels whose normal quantile exceeds that
    bound cannot be reached at this N.
    """

    kind = TestKind.WALD_MODIFIED
    description = "Wald, modified small-sample correction"

    @property
    def correction(self) -> float:
        """c = 1 - 1 / (4 (N - 1))"""
        return 1.0 - 1.0 / (4.0 * self.spec.dof)

    @property
    def curvature(self) -> float:
        """K in m = t c / sqrt(1 + K t^2)"""
        if self.spec.printed_modified:
            # s^2 delta^2 / (2 (1 - 1/N)) rewritten in t: t^2 F / (2 (N - 1))
            return self.spec.periods_per_year / (2.0 * self.spec.dof)
        return 1.0 / (2.0 * self.spec.dof)

    def statistic(self, sr_annual: Any, delta: Any = None) -> Any:
        t = self.studentized(sr_annual, delta)
        return t * self.correction / np.sqrt(1.0 + self.curvature * t * t)

    def luck(self, sr_annual: float) -> float:
        return 2.0 * normal_sf(abs(float(self.statistic(sr_annual))))

    def min_sharpe(self, confidence: float) -> float:
        self.check_confidence(confidence)
        z = _normal_quantile(0.5 * (1.0 + confidence))
        discriminant = self.correction**2 - self.curvature * z * z
        if discriminant <= 0.0:
            logger.error(f"❌ Confidence {confidence} unreachable with N={self.spec.n}")
            raise UnreachableConfidenceError(
                f"confidence {confidence} is unreachable with the modified Wald test at N={self.spec.n} "
                f"(discriminant {discriminant:.6g} <= 0)"
            )
        return self.scale * z / math.sqrt(discriminant)

    def critical_statistic(self, alpha: float) -> float:
        return _two_sided_z(alpha)
