"""
Table Rendering

CSV and HTML output for generated tables, and bulk generation of the catalog.
"""

import html
import logging
from decimal import Decimal
from pathlib import Path

import pandas as pd

from .catalog import list_reference_tables, reference_table
from .generator import Table, generate
from .spec import PROB_BAND_RGB, SR_BAND_RGB, TableKind

logger = logging.getLogger(__name__)


def _percent_label(value: float) -> str:
    return f"{Decimal(repr(value)) * 100:f}".rstrip("0").rstrip(".") + "%"


def _row_label(table: Table, value: float) -> str:
    if table.spec.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE:
        return _percent_label(value)
    return f"{round(value * 100):d}%"


def _row_header(table: Table) -> str:
    return "skill" if table.spec.kind is TableKind.MIN_SHARPE_BY_CONFIDENCE else "rho"


def _format_value(table: Table, value: float | None) -> str:
    if value is None:
        return ""
    if table.spec.holds_probabilities:
        return f"{value:.0f}"
    return f"{value:.2f}"


def to_frame(table: Table) -> pd.DataFrame:
    """Formatted cells as a DataFrame indexed by row label, one column per N."""
    frame = pd.DataFrame(
        [[_format_value(table, cell.value) for cell in row] for row in table.cells],
        index=pd.Index([_row_label(table, value) for value in table.rows], name=_row_header(table)),
        columns=[str(n) for n in table.columns],
    )
    return frame


def render_csv(table: Table) -> str:
    """
    CSV text: a header row of N values, then one line per rho (or confidence level).

    Unavailable cells are left empty.
    """
    return to_frame(table).to_csv(lineterminator="\n")


def _css_rgb(rgb: tuple[float, float, float]) -> str:
    red, green, blue = (round(channel * 255) for channel in rgb)
    return f"rgb({red}, {green}, {blue})"


def table_css() -> str:
    """Stylesheet for the colour band classes."""
    rules = []
    for band, rgb in (*SR_BAND_RGB.items(), *PROB_BAND_RGB.items()):
        if rgb is not None:
            rules.append(f"td.{band.value} {{ background-color: {_css_rgb(rgb)}; }}")
    return "\n".join(rules)


def render_html(table: Table, include_style: bool = True) -> str:
    """
    HTML fragment of the table; cells carry their colour band as a CSS class.

    Args:
        table: Generated table
        include_style: Prepend a <style> block defining the band colours

    Returns:
        HTML text
    """
    lines = []
    if include_style:
        lines.append(f"<style>\n{table_css()}\n</style>")
    lines.append(f'<table class="sharpestudio-table" data-name="{html.escape(table.spec.name or "")}">')
    if table.spec.title:
        lines.append(f"  <caption>{html.escape(table.spec.title)}</caption>")

    header = "".join(f"<th>{n}</th>" for n in table.columns)
    lines.append(f"  <thead><tr><th>{_row_header(table)}</th>{header}</tr></thead>")
    lines.append("  <tbody>")
    for value, row in zip(table.rows, table.cells, strict=True):
        cells = "".join(
            f'<td class="{cell.color}">{_format_value(table, cell.value)}</td>'
            if cell.color
            else f"<td>{_format_value(table, cell.value)}</td>"
            for cell in row
        )
        lines.append(f"    <tr><th>{html.escape(_row_label(table, value))}</th>{cells}</tr>")
    lines.append("  </tbody>")
    lines.append("</table>")
    return "\n".join(lines) + "\n"


def write_table(table: Table, out_dir: str | Path, html_output: bool = False, stem: str | None = None) -> list[Path]:
    """
    Write a table as <stem>.csv (and <stem>.html) under out_dir.

    Args:
        table: Generated table
        out_dir: Output directory, created if missing
        html_output: Also write the HTML fragment
        stem: File stem; defaults to <kind>_<test>_<tail>_<freq>_<target>

    Returns:
        Paths written
    """
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    stem = stem or table.spec.file_stem

    written = [directory / f"{stem}.csv"]
    written[0].write_text(render_csv(table), encoding="utf-8")
    if html_output:
        written.append(directory / f"{stem}.html")
        written[1].write_text(render_html(table), encoding="utf-8")

    logger.debug(f"📊 Wrote {', '.join(path.name for path in written)}")
    return written


def generate_all(out_dir: str | Path, html_output: bool = False, workers: int | None = None) -> list[Path]:
    """
    Generate and write every catalogued table.

    Files are named <catalog name>_<kind>_<test>_<tail>_<freq>_<target>.

    Returns:
        Paths written, in catalog order
    """
    written: list[Path] = []
    for name in list_reference_tables():
        spec = reference_table(name)
        written.extend(write_table(generate(spec, workers=workers), out_dir, html_output, stem=f"{name}_{spec.file_stem}"))
    logger.info(f"✅ Wrote {len(written)} table files to {out_dir}")
    return written
