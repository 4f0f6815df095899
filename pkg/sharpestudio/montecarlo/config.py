"""
Simulation Configuration
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sharpestudio.autocorr.ar1 import Ar1Params
from sharpestudio.autocorr.estimation import RHO_METHODS
from sharpestudio.core.config import get_settings


class InnovationLaw(str, Enum):
    """Distribution of the unit-variance innovations v_t"""

    NORMAL = "normal"
    STUDENT_T5 = "student-t5"  # Student-t with 5 degrees of freedom, rescaled to unit variance


class RhoMode(str, Enum):
    """Which autocorrelation the tests are given during calibration"""

    TRUE = "true"  # the simulated rho: calibrates the statistic
    ESTIMATED = "estimated"  # rho estimated per path: calibrates the full pipeline


def _default_seed() -> int:
    return get_settings().seed


class SimulationConfig(BaseModel):
    """
    Monte Carlo run description.

    Attributes:
        params: AR(1) parameters of the simulated returns
        n: Observations per path
        replications: Number of paths
        seed: Root seed; every block of paths derives its own stream from it
        alpha: Significance level for type-I error calibration
        periods_per_year: Annualization factor F given to the tests
        risk_free_per_period: Rate subtracted from the mean return; equal to mu under the null
        innovations: Innovation law
        rho_mode: Feed the tests the true or the estimated rho
        rho_method: Estimator used in estimated mode
        as_printed: Forwarded to the rho recipe
        block_size: Paths simulated per block; blocks are the unit of parallelism
        workers: Thread pool size; None uses Settings.workers
    """

    model_config = ConfigDict(frozen=True)

    params: Ar1Params = Field(default_factory=Ar1Params)
    n: int = Field(default=252, ge=4, description="Observations per path.")
    replications: int = Field(default=10_000, ge=1, description="Number of simulated paths.")
    seed: int = Field(default_factory=_default_seed, ge=0, lt=2**64, description="Root seed.")
    alpha: float = Field(default=0.05, gt=0.0, le=1.0, description="Significance level.")
    periods_per_year: float = Field(default=252.0, gt=0.0)
    risk_free_per_period: float = Field(default=0.0)
    innovations: InnovationLaw = InnovationLaw.NORMAL
    rho_mode: RhoMode = RhoMode.TRUE
    rho_method: str = Field(default="recipe")
    as_printed: bool = False
    block_size: int = Field(default=10_000, ge=1, le=1_000_000)
    workers: int | None = Field(default=None, ge=1)

    @field_validator("rho_method")
    @classmethod
    def _known_method(cls, method: str) -> str:
        if method not in RHO_METHODS:
            raise ValueError(f"Unknown rho method: {method}. Available: {list(RHO_METHODS)}")
        return method

    @property
    def block_count(self) -> int:
        return -(-self.replications // self.block_size)

    def block_sizes(self) -> list[int]:
        """Paths per block; every block is full except possibly the last."""
        sizes = [self.block_size] * self.block_count
        sizes[-1] = self.replications - self.block_size * (self.block_count - 1)
        return sizes
