import logging
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from sharpestudio.autocorr.ar1 import Ar1Params
from sharpestudio.core.series import ObservationSeries
from sharpestudio.montecarlo import SimulationConfig, simulate_ar1

logger = logging.getLogger(__name__)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test sees the same numbers."""
    return np.random.default_rng(12345)


@pytest.fixture
def white_noise_series(rng) -> ObservationSeries:
    """500 daily i.i.d. normal returns with a positive drift."""
    values = rng.normal(loc=0.0005, scale=0.01, size=500)
    return ObservationSeries(values=tuple(values.tolist()), periods_per_year=252.0)


@pytest.fixture
def ar1_series() -> ObservationSeries:
    """
    2000 daily AR(1) returns with rho = 0.5, drawn through the simulation module.
    """
    config = SimulationConfig(params=Ar1Params(mu=0.0004, rho=0.5, sigma=0.01), n=2000, seed=7)
    series = simulate_ar1(config)
    logger.info(f"🎲 AR(1) fixture ready: n={series.n}")
    return series


def _write_csv(path: Path, lines: list[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def write_csv(tmp_path):
    """
    Factory writing CSV lines to a temporary file.

    Usage:
        path = write_csv("returns.csv", ["value", "0.01", "-0.02"])
    """

    def factory(name: str, lines: list[str]) -> Path:
        return _write_csv(tmp_path / name, lines)

    return factory


@pytest.fixture
def returns_csv(write_csv, white_noise_series) -> Path:
    """date,value CSV holding the white-noise fixture."""
    lines = ["date,value"]
    lines += [f"d{i:04d},{value!r}" for i, value in enumerate(white_noise_series.values)]
    return write_csv("returns.csv", lines)


@pytest.fixture
def runner() -> CliRunner:
    """Click test runner."""
    return CliRunner()
