"""
SharpeStudio Tables

Declarative significance tables: specification, catalog, generation and rendering.
"""

from .catalog import list_reference_tables, reference_table, register_reference_tables
from .generator import Cell, Table, generate, make_cell, round_half_away
from .render import generate_all, render_csv, render_html, table_css, to_frame, write_table
from .spec import (
    CONFIDENCE_GRID,
    CONFIDENCE_PERCENTS,
    DAILY_N_GRID,
    DAILY_N_GRID_WITH_122,
    MONTHLY_N_GRID,
    PROB_BAND_RGB,
    RHO_GRID,
    SR_BAND_RGB,
    Frequency,
    ProbBand,
    SrBand,
    TableKind,
    TableSpec,
    default_n_grid,
    prob_band,
    sr_band,
)

__all__ = [
    "CONFIDENCE_GRID",
    "CONFIDENCE_PERCENTS",
    "Cell",
    "DAILY_N_GRID",
    "DAILY_N_GRID_WITH_122",
    "Frequency",
    "MONTHLY_N_GRID",
    "PROB_BAND_RGB",
    "ProbBand",
    "RHO_GRID",
    "SR_BAND_RGB",
    "SrBand",
    "Table",
    "TableKind",
    "TableSpec",
    "default_n_grid",
    "generate",
    "generate_all",
    "list_reference_tables",
    "make_cell",
    "reference_table",
    "prob_band",
    "register_reference_tables",
    "render_csv",
    "render_html",
    "round_half_away",
    "sr_band",
    "table_css",
    "to_frame",
    "write_table",
]
