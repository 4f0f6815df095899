"""
Runtime Settings

Process-wide defaults for numerical budgets, Monte Carlo seeding and worker pools.
Values come from ``SHARPESTUDIO_*`` environment variables (optionally loaded from a
``.env`` file); nothing here is required, every setting has a default and the CLI
exposes the same knobs as flags.
"""

import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from sharpestudio.errors import DomainError

logger = logging.getLogger(__name__)

ENV_PREFIX = "SHARPESTUDIO_"

# Periods per year for the frequency presets accepted by the CLI and the table module
PERIODS_PER_YEAR = {
    "daily": 252.0,
    "weekly": 52.0,
    "monthly": 12.0,
    "quarterly": 4.0,
    "annual": 1.0,
}


class Settings(BaseModel):
    """
    Library defaults.

    Attributes:
        workers: Thread pool size used by table generation and simulation (1 = serial)
        seed: Default Monte Carlo seed
        max_iterations: Iteration budget for continued fractions and root finders
        rho_clamp: Estimated autocorrelations are clamped to (-rho_clamp, rho_clamp)
    """

    workers: int = Field(default=1, ge=1, description="Thread pool size for tables and simulation.")
    seed: int = Field(default=20181231, ge=0, description="Default Monte Carlo seed.")
    max_iterations: int = Field(default=10_000, ge=100, description="Continued fraction / root finder budget.")
    rho_clamp: float = Field(default=0.999, gt=0.0, lt=1.0, description="Bound applied to estimated rho.")


def _from_env(name: str) -> str | None:
    return os.getenv(f"{ENV_PREFIX}{name.upper()}")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Load settings once per process.

    Returns:
        Settings populated from the environment, falling back to defaults
    """
    load_dotenv(override=False)

    overrides = {}
    for field_name in Settings.model_fields:
        raw = _from_env(field_name)
        if raw is not None:
            overrides[field_name] = raw

    settings = Settings(**overrides)
    if overrides:
        logger.debug(f"🔧 Settings overridden from environment: {sorted(overrides)}")
    return settings


def periods_per_year(frequency: str) -> float:
    """
    Resolve a frequency preset name to its annualization factor F.

    Args:
        frequency: One of the keys of PERIODS_PER_YEAR

    Returns:
        Number of periods per year

    Raises:
        DomainError: If the preset is unknown
    """
    try:
        return PERIODS_PER_YEAR[frequency.lower()]
    except KeyError:
        raise DomainError(f"Unknown frequency: {frequency}. Available: {list(PERIODS_PER_YEAR)}") from None
