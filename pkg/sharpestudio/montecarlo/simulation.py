"""
AR(1) Path Simulation

Every block of paths draws from its own numpy Generator, derived from the root seed
and the block index through a SeedSequence spawn key. A block therefore produces the
same numbers whichever thread runs it and however many blocks run alongside.
"""

import logging
import math

import numpy as np

from sharpestudio.autocorr.ar1 import stationary_variance
from sharpestudio.core.series import ObservationSeries, SeriesKind

from .config import InnovationLaw, SimulationConfig

logger = logging.getLogger(__name__)

_T5_DOF = 5.0
_T5_UNIT_SCALE = math.sqrt((_T5_DOF - 2.0) / _T5_DOF)


def block_generator(seed: int, block: int) -> np.random.Generator:
    """Independent, reproducible generator for one block of paths."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))


def draw_innovations(rng: np.random.Generator, law: InnovationLaw, size: tuple[int, ...]) -> np.ndarray:
    """Zero-mean unit-variance white noise."""
    if law is InnovationLaw.STUDENT_T5:
        return rng.standard_t(_T5_DOF, size=size) * _T5_UNIT_SCALE
    return rng.standard_normal(size=size)


def simulate_paths(config: SimulationConfig, count: int, block: int = 0) -> np.ndarray:
    """
    Simulate a block of AR(1) return paths.

    R_1 = mu + e_1 with e_1 drawn at the stationary scale sigma / sqrt(1 - rho^2), then
    e_t = rho e_{t-1} + sigma v_t.

    Args:
        config: Simulation configuration
        count: Number of paths in the block
        block: Block index selecting the random stream

    Returns:
        Array of shape (count, config.n), one path per row
    """
    params = config.params
    rng = block_generator(config.seed, block)
    noise = draw_innovations(rng, config.innovations, (count, config.n))

    deviations = np.empty_like(noise)
    deviations[:, 0] = math.sqrt(stationary_variance(params)) * noise[:, 0]
    for t in range(1, config.n):
        deviations[:, t] = params.rho * deviations[:, t - 1] + params.sigma * noise[:, t]

    return params.mu + deviations


def simulate_ar1(config: SimulationConfig) -> ObservationSeries:
    """
    Simulate a single AR(1) return series, fully determined by the seed.

    The series is the first path of block 0, so it matches simulate_paths(config, 1).

    Returns:
        ObservationSeries of config.n returns at config.periods_per_year
    """
    path = simulate_paths(config, 1)[0]
    logger.debug(f"🎲 Simulated AR(1) path: n={config.n}, rho={config.params.rho}, seed={config.seed}")
    return ObservationSeries(
        values=tuple(path.tolist()),
        kind=SeriesKind.RETURNS,
        periods_per_year=config.periods_per_year,
        risk_free_per_period=config.risk_free_per_period,
    )
