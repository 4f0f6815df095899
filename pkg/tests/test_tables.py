from decimal import Decimal
from pathlib import Path

import pandas as pd
import pytest

from sharpestudio.errors import TableSpecError
from sharpestudio.significance.base import TestKind
from sharpestudio.tables import (
    CONFIDENCE_GRID,
    DAILY_N_GRID,
    DAILY_N_GRID_WITH_122,
    MONTHLY_N_GRID,
    RHO_GRID,
    Frequency,
    ProbBand,
    SrBand,
    TableKind,
    TableSpec,
    generate,
    generate_all,
    list_reference_tables,
    make_cell,
    reference_table,
    prob_band,
    render_csv,
    render_html,
    round_half_away,
    sr_band,
    table_css,
    to_frame,
    write_table,
)

PRINTED_TABLES = Path(__file__).parent / "data" / "reference_tables"


@pytest.fixture(scope="module")
def tables():
    """Generated catalog tables, computed once per module."""
    cache = {}

    def get(name: str):
        if name not in cache:
            cache[name] = generate(reference_table(name), workers=1)
        return cache[name]

    return get


class TestGrids:
    def test_daily(self):
        assert DAILY_N_GRID[:4] == (25, 50, 100, 150)
        assert DAILY_N_GRID[-1] == 1000
        assert len(DAILY_N_GRID) == 21
        assert 122 in DAILY_N_GRID_WITH_122

    def test_monthly(self):
        assert MONTHLY_N_GRID == tuple(range(6, 121, 6))

    def test_rho(self):
        assert len(RHO_GRID) == 19
        assert RHO_GRID[9] == 0.0

    def test_confidence(self):
        assert CONFIDENCE_GRID[:3] == (0.8, 0.85, 0.9)
        assert CONFIDENCE_GRID[-1] == 0.999999
        assert 0.9999 in CONFIDENCE_GRID
        assert len(CONFIDENCE_GRID) == 48
        assert all(a < b for a, b in zip(CONFIDENCE_GRID, CONFIDENCE_GRID[1:]))


class TestRounding:
    @pytest.mark.parametrize(
        ("value", "quantum", "expected"),
        [
            (0.125, "0.01", 0.13),
            (-0.125, "0.01", -0.13),
            (2.675, "0.01", 2.68),
            (1.004999, "0.01", 1.0),
            (68.5, "1", 69.0),
            (-0.5, "1", -1.0),
        ],
    )
    def test_half_away_from_zero(self, value, quantum, expected):
        assert round_half_away(value, Decimal(quantum)) == expected


class TestColors:
    @pytest.mark.parametrize(
        ("value", "band"),
        [(-1.0, SrBand.SR0), (0.5, SrBand.SR0), (0.51, SrBand.SR1), (1.0, SrBand.SR1), (1.5, SrBand.SR2), (2.0, SrBand.SR3), (2.01, SrBand.SR4)],
    )
    def test_sharpe_bands(self, value, band):
        assert sr_band(value) is band

    @pytest.mark.parametrize(
        ("percent", "band"),
        [(79.0, ProbBand.P0), (80.0, ProbBand.P1), (90.0, ProbBand.P2), (95.0, ProbBand.P3), (97.5, ProbBand.P4), (98.9, ProbBand.P4), (99.0, ProbBand.P5)],
    )
    def test_probability_bands(self, percent, band):
        assert prob_band(percent) is band

    def test_color_follows_rounded_value(self):
        spec = reference_table("tab1")
        cell = make_cell(spec, 0.0, 250)
        assert cell.value == 1.65
        assert cell.color == SrBand.SR3.value

    def test_css(self):
        css = table_css()
        assert "td.sr-4" in css
        assert "td.p-5" in css
        assert "td.sr-0" not in css


class TestSpecValidation:
    def test_defaults_follow_frequency(self):
        spec = TableSpec.create(kind=TableKind.MIN_SHARPE_BY_SKILL, test=TestKind.FISHER, frequency=Frequency.MONTHLY, target=0.9)
        assert spec.periods_per_year == 12.0
        assert spec.n_grid == MONTHLY_N_GRID

    def test_custom_frequency(self):
        spec = TableSpec.create(
            kind=TableKind.SKILL_FOR_SHARPE,
            test=TestKind.WALD_RAW,
            frequency=None,
            periods_per_year=52.0,
            n_grid=(26, 52, 104),
            target=1.0,
        )
        assert spec.file_stem == "skill-for-sharpe_wald-raw_two_f52_sr1"

    @pytest.mark.parametrize(
        "fields",
        [
            {"kind": TableKind.MIN_SHARPE_BY_SKILL, "test": TestKind.FISHER},
            {"kind": TableKind.MIN_SHARPE_BY_SKILL, "test": TestKind.FISHER, "target": 1.5},
            {"kind": TableKind.SKILL_FOR_SHARPE, "test": TestKind.FISHER, "target": 1.0, "n_grid": (50, 25)},
            {"kind": TableKind.SKILL_FOR_SHARPE, "test": TestKind.FISHER, "target": 1.0, "n_grid": (1, 25)},
            {"kind": TableKind.SKILL_FOR_SHARPE, "test": TestKind.FISHER, "target": 1.0, "rho_grid": (0.0, 1.0)},
            {"kind": TableKind.MIN_SHARPE_BY_CONFIDENCE, "test": TestKind.FISHER, "confidence_grid": (0.9, 1.0)},
            {"kind": TableKind.SKILL_FOR_SHARPE, "test": "bootstrap", "target": 1.0},
        ],
    )
    def test_invalid(self, fields):
        with pytest.raises(TableSpecError):
            TableSpec.create(**fields)


class TestCatalog:
    def test_names(self):
        names = list_reference_tables()
        assert len(names) == 42
        assert names[:6] == ["tab1", "tab2", "tab3", "tab4", "tab3bis", "tab4bis"]
        assert "tab28bis" in names

    def test_lookup(self):
        spec = reference_table("TAB1")
        assert spec.name == "tab1"
        assert spec.test is TestKind.WALD_STUDENTIZED
        assert spec.target == 0.9
        assert spec.file_stem == "min-sharpe-by-skill_wald-studentized_two_daily_skill90"

    def test_blocks(self):
        assert reference_table("tab4").frequency is Frequency.MONTHLY
        assert reference_table("tab4").test is TestKind.STUDENT_ONE_TAILED
        assert reference_table("tab7").target == 0.95
        assert reference_table("tab9").kind is TableKind.MIN_SHARPE_BY_CONFIDENCE
        assert reference_table("tab9").n_grid == DAILY_N_GRID_WITH_122
        assert reference_table("tab18").target == 1.0
        assert reference_table("tab27bis").test is TestKind.STUDENT_TWO_TAILED

    def test_unknown(self):
        with pytest.raises(TableSpecError):
            reference_table("tab99")


class TestReferenceCells:
    @pytest.mark.parametrize("name", sorted(path.stem for path in PRINTED_TABLES.glob("*.csv")))
    def test_every_printed_cell(self, tables, name):
        printed = pd.read_csv(PRINTED_TABLES / f"{name}.csv", dtype=str, index_col="rho", keep_default_na=False)
        assert len(printed) == 19
        pd.testing.assert_frame_equal(
            to_frame(tables(name)), printed, check_dtype=False, check_index_type=False, check_column_type=False
        )

    @pytest.mark.parametrize(
        ("name", "row", "n", "expected"),
        [
            ("tab1", 0.0, 250, 1.65),
            ("tab1", 0.3, 250, 1.21),
            ("tab1", -0.3, 250, 2.25),
            ("tab1", -0.3, 150, 2.90),
            ("tab1", 0.3, 150, 1.57),
            ("tab1", -0.3, 300, 2.05),
            ("tab1", 0.3, 300, 1.11),
            ("tab1", -0.3, 600, 1.45),
            ("tab1", 0.3, 600, 0.78),
            ("tab1", 0.0, 1000, 0.83),
            ("tab2", 0.3, 24, 0.88),
            ("tab3", -0.3, 500, 1.24),
            ("tab3", 0.0, 500, 0.91),
            ("tab3", 0.3, 500, 0.67),
            ("tab3bis", 0.0, 500, 1.17),
            ("tab3bis", -0.3, 800, 1.26),
            ("tab3bis", 0.0, 800, 0.92),
            ("tab3bis", 0.3, 800, 0.68),
            ("tab3bis", 0.0, 1000, 0.83),
            ("tab4", 0.0, 12, 1.36),
            ("tab5", 0.0, 250, 1.97),
            ("tab9", 0.999999, 250, 4.91),
        ],
    )
    def test_min_sharpe_cells(self, tables, name, row, n, expected):
        assert tables(name).cell(row, n).value == pytest.approx(expected, abs=0.01 + 1e-9)

    @pytest.mark.parametrize(
        ("name", "row", "n", "expected"),
        [
            ("tab13", 0.0, 500, 52.0),
            ("tab13", 0.0, 1000, 68.0),
            ("tab15", 0.0, 250, 69.0),
            ("tab18", 0.0, 24, 84.0),
        ],
    )
    def test_skill_cells(self, tables, name, row, n, expected):
        assert tables(name).cell(row, n).value == pytest.approx(expected, abs=1.0)

    def test_shape(self, tables):
        assert tables("tab1").shape == (19, 21)
        assert tables("tab9").shape == (48, 22)

    @pytest.mark.parametrize(("two_tailed", "one_tailed"), [("tab3bis", "tab7"), ("tab4bis", "tab8")])
    def test_two_tailed_at_90_equals_one_tailed_at_95(self, tables, two_tailed, one_tailed):
        left, right = tables(two_tailed), tables(one_tailed)
        assert [[cell.value for cell in row] for row in left.cells] == [[cell.value for cell in row] for row in right.cells]

    def test_rows_decrease_with_autocorrelation(self, tables):
        table = tables("tab1")
        for column in range(len(table.columns)):
            values = [row[column].raw for row in table.cells]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_columns_decrease_with_n(self, tables):
        for row in tables("tab2").cells:
            values = [cell.raw for cell in row]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_skill_rises_with_autocorrelation(self, tables):
        table = tables("tab21")
        for column in range(len(table.columns)):
            values = [row[column].raw for row in table.cells]
            assert all(a <= b for a, b in zip(values, values[1:]))


class TestGeneration:
    def test_threads_give_the_same_table(self):
        spec = reference_table("tab2")
        assert generate(spec, workers=4) == generate(spec, workers=1)

    def test_unreachable_cells_are_empty(self):
        spec = TableSpec.create(
            kind=TableKind.MIN_SHARPE_BY_CONFIDENCE,
            test=TestKind.WALD_MODIFIED,
            frequency=Frequency.MONTHLY,
        )
        table = generate(spec, workers=1)
        cell = table.cell(0.999999, 6)
        assert not cell.available
        assert cell.color is None
        assert "unreachable" in cell.note
        assert table.cell(0.9, 6).available
        last_line = render_csv(table).splitlines()[-1]
        assert last_line.startswith("99.9999%,,")


class TestRendering:
    def test_csv(self, tables):
        lines = render_csv(tables("tab1")).splitlines()
        assert lines[0] == "rho," + ",".join(str(n) for n in DAILY_N_GRID)
        assert len(lines) == 20
        assert lines[1].startswith("-90%,")
        middle = dict(zip(lines[0].split(","), lines[10].split(",")))
        assert middle["rho"] == "0%"
        assert middle["250"] == "1.65"

    def test_confidence_csv(self, tables):
        lines = render_csv(tables("tab9")).splitlines()
        assert lines[0].startswith("skill,25,50,100,122,150")
        assert lines[1].startswith("80%,")
        assert lines[-1].startswith("99.9999%,")

    def test_skill_csv_has_whole_percents(self, tables):
        lines = render_csv(tables("tab13")).splitlines()
        middle = dict(zip(lines[0].split(","), lines[10].split(",")))
        assert middle["500"] == "52"

    def test_html(self, tables):
        text = render_html(tables("tab1"))
        assert text.startswith("<style>")
        assert 'data-name="tab1"' in text
        assert "<caption>Sharpe level for 90% targeted skill" in text
        assert '<td class="sr-3">1.65</td>' in text
        assert "<style>" not in render_html(tables("tab1"), include_style=False)

    def test_write_table(self, tables, tmp_path):
        paths = write_table(tables("tab13"), tmp_path / "out", html_output=True)
        assert [path.name for path in paths] == [
            "skill-for-sharpe_wald-studentized_two_daily_sr0.5.csv",
            "skill-for-sharpe_wald-studentized_two_daily_sr0.5.html",
        ]
        assert paths[0].read_text(encoding="utf-8") == render_csv(tables("tab13"))

    @pytest.mark.slow
    def test_generate_all(self, tmp_path):
        paths = generate_all(tmp_path)
        assert len(paths) == 42
        assert paths[0].name == "tab1_min-sharpe-by-skill_wald-studentized_two_daily_skill90.csv"
