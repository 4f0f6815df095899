"""
Table Generation

Evaluates every cell of a TableSpec. Rows are independent and may be computed on a
thread pool; the table is assembled by index so the result never depends on the order
in which rows finish.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from decimal import ROUND_HALF_UP, Decimal

from pydantic import BaseModel, ConfigDict

from sharpestudio.core.config import get_settings
from sharpestudio.errors import SharpeStudioError
from sharpestudio.significance import make_spec, min_sharpe, skill

from .spec import TableKind, TableSpec, prob_band, sr_band

logger = logging.getLogger(__name__)

_SHARPE_QUANTUM = Decimal("0.01")
_PERCENT_QUANTUM = Decimal("1")


def round_half_away(value: float, quantum: Decimal) -> float:
    """Round to the quantum with ties away from zero, on the shortest decimal repr of value."""
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


class Cell(BaseModel):
    """
    One table cell.

    Attributes:
        raw: Unrounded value (minimum Sharpe, or skill in percent); None when unavailable
        value: Value rounded to the printed precision
        color: CSS class of the colour band, computed on the rounded value
        note: Reason the cell is unavailable
    """

    model_config = ConfigDict(frozen=True)

    raw: float | None
    value: float | None
    color: str | None = None
    note: str | None = None

    @property
    def available(self) -> bool:
        return self.value is not None


class Table(BaseModel):
    """Generated table: the spec plus a row-major grid of cells."""

    model_config = ConfigDict(frozen=True)

    spec: TableSpec
    rows: tuple[float, ...]
    columns: tuple[int, ...]
    cells: tuple[tuple[Cell, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def cell(self, row: float, column: int) -> Cell:
        """Cell at a row value (rho or confidence) and a column N."""
        return self.cells[self.rows.index(row)][self.columns.index(column)]


def _compute(spec: TableSpec, row: float, n: int) -> float:
    """Unrounded cell value."""
    rho = spec.rho if spec.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE else row
    test_spec = make_spec(
        spec.test,
        n=n,
        periods_per_year=spec.periods_per_year,
        rho=rho,
        printed_modified=spec.printed_modified,
    )
    if spec.kind is TableKind.MIN_SHARPE_BY_SKILL:
        return min_sharpe(test_spec, spec.target)
    if spec.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE:
        return min_sharpe(test_spec, row)
    return 100.0 * skill(spec.target, test_spec)


def make_cell(spec: TableSpec, row: float, n: int) -> Cell:
    """Evaluate, round and classify one cell; failures give an unavailable cell."""
    try:
        raw = _compute(spec, row, n)
    except SharpeStudioError as e:
        logger.debug(f"📊 Cell (row={row}, N={n}) unavailable: {e}")
        return Cell(raw=None, value=None, note=str(e))

    if spec.holds_probabilities:
        value = round_half_away(raw, _PERCENT_QUANTUM)
        return Cell(raw=raw, value=value, color=prob_band(value).value)
    value = round_half_away(raw, _SHARPE_QUANTUM)
    return Cell(raw=raw, value=value, color=sr_band(value).value)


def _row(spec: TableSpec, row: float) -> tuple[Cell, ...]:
    return tuple(make_cell(spec, row, n) for n in spec.n_grid)


def generate(spec: TableSpec, workers: int | None = None) -> Table:
    """
    Compute every cell of a table.

    Args:
        spec: Table specification
        workers: Thread pool size; defaults to Settings.workers (1 = serial)

    Returns:
        Table with one row per rho (or confidence) and one column per N
    """
    workers = get_settings().workers if workers is None else max(1, workers)
    started = time.perf_counter()

    rows = spec.row_values
    if workers == 1:
        cells = [_row(spec, row) for row in rows]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            cells = list(executor.map(lambda row: _row(spec, row), rows))

    table = Table(spec=spec, rows=rows, columns=spec.n_grid, cells=tuple(cells))
    elapsed = time.perf_counter() - started
    logger.info(f"📊 Generated {spec.name or spec.file_stem}: {len(rows)}x{len(spec.n_grid)} in {elapsed:.2f}s")
    return table
