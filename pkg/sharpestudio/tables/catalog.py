"""
Reference Table Catalog

Named specifications of the standard significance tables:

- tab1 .. tab8bis: minimum annualized Sharpe for 90% and 95% skill, by rho and N
- tab9 .. tab12bis: minimum annualized Sharpe by confidence level at rho = 0
- tab13 .. tab28bis: skill percentage for annualized Sharpe 0.5, 1.0, 1.5 and 2.0

Within each block the tables run Wald (daily, monthly), Student one-tailed (daily,
monthly); the "bis" tables are the Student two-tailed counterparts. Wald tables use the
delta-studentized statistic.
"""

import logging
from collections.abc import Callable, Iterator

from sharpestudio.errors import TableSpecError
from sharpestudio.significance.base import TestKind

from .spec import Frequency, TableKind, TableSpec

logger = logging.getLogger(__name__)

# Global registry of catalogued tables
_REFERENCE_TABLES: dict[str, TableSpec] = {}

TableFactory = Callable[[], Iterator[tuple[str, TableSpec]]]

_BLOCK_LAYOUT: tuple[tuple[int, str, TestKind, Frequency], ...] = (
    (0, "", TestKind.WALD_STUDENTIZED, Frequency.DAILY),
    (1, "", TestKind.WALD_STUDENTIZED, Frequency.MONTHLY),
    (2, "", TestKind.STUDENT_ONE_TAILED, Frequency.DAILY),
    (3, "", TestKind.STUDENT_ONE_TAILED, Frequency.MONTHLY),
    (2, "bis", TestKind.STUDENT_TWO_TAILED, Frequency.DAILY),
    (3, "bis", TestKind.STUDENT_TWO_TAILED, Frequency.MONTHLY),
)


def _block(first: int) -> Iterator[tuple[str, TestKind, Frequency]]:
    """Names and (test, frequency) of the six tables of a block starting at tab<first>."""
    for offset, suffix, test, frequency in _BLOCK_LAYOUT:
        yield f"tab{first + offset}{suffix}", test, frequency


def register_reference_tables(factory: TableFactory) -> TableFactory:
    """
    Decorator registering every (name, spec) pair a factory yields.

    Usage:
        @register_reference_tables
        def my_tables():
            yield "mytab", TableSpec(...)
    """
    for name, spec in factory():
        if name in _REFERENCE_TABLES:
            raise TableSpecError(f"Table {name} is already registered")
        _REFERENCE_TABLES[name] = spec.model_copy(update={"name": name})
        logger.debug(f"📝 Registered table: {name} -> {spec.file_stem}")
    return factory


@register_reference_tables
def _min_sharpe_by_skill() -> Iterator[tuple[str, TableSpec]]:
    for first, skill in ((1, 0.90), (5, 0.95)):
        for name, test, frequency in _block(first):
            yield name, TableSpec(
                kind=TableKind.MIN_SHARPE_BY_SKILL,
                test=test,
                frequency=frequency,
                target=skill,
                title=f"Sharpe level for {skill:.0%} targeted skill ({test.value}, {frequency.value})",
            )


@register_reference_tables
def _min_sharpe_by_confidence() -> Iterator[tuple[str, TableSpec]]:
    for name, test, frequency in _block(9):
        yield name, TableSpec(
            kind=TableKind.MIN_SHARPE_BY_CONFIDENCE,
            test=test,
            frequency=frequency,
            rho=0.0,
            title=f"Sharpe level by targeted skill, no autocorrelation ({test.value}, {frequency.value})",
        )


@register_reference_tables
def _skill_for_sharpe() -> Iterator[tuple[str, TableSpec]]:
    for first, level in ((13, 0.5), (17, 1.0), (21, 1.5), (25, 2.0)):
        for name, test, frequency in _block(first):
            yield name, TableSpec(
                kind=TableKind.SKILL_FOR_SHARPE,
                test=test,
                frequency=frequency,
                target=level,
                title=f"Skill percentage for a Sharpe of {level:.1f} ({test.value}, {frequency.value})",
            )


def reference_table(name: str) -> TableSpec:
    """
    Look up a catalogued table.

    Raises:
        TableSpecError: If no table has this name
    """
    try:
        return _REFERENCE_TABLES[name.lower()]
    except KeyError:
        raise TableSpecError(f"Unknown table: {name}. Available: {list_reference_tables()}") from None


def list_reference_tables() -> list[str]:
    """Catalogued table names in catalog order."""
    return list(_REFERENCE_TABLES)
