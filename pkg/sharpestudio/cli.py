"""
SharpeStudio CLI - Command-line interface for SharpeStudio
"""

import logging
import sys
from pathlib import Path

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from .autocorr.ar1 import Ar1Params
from .autocorr.estimation import RHO_METHODS
from .core.config import PERIODS_PER_YEAR
from .core.config import periods_per_year as preset_periods_per_year
from .core.report import Report, build_report, verify_report
from .core.series import SeriesKind, load_series
from .errors import SharpeStudioError
from .montecarlo import InnovationLaw, RhoMode, SimulationConfig, calibration_grid, to_csv_rows
from .significance import TEST_FAMILIES, make_spec, min_sharpe, resolve_test, test_registry
from .significance.base import Tail, TestKind, registry_key
from .tables import Frequency, TableKind, TableSpec, generate, generate_all, list_reference_tables, reference_table
from .tables.render import render_csv, render_html

logger = logging.getLogger(__name__)

console = Console()
error_console = Console(stderr=True)

# Below this many observations the autocorrelation recipe is too noisy to trust blindly
SHORT_SERIES_WARNING = 50

_SKILL_STYLES = {"p-5": "bold green", "p-4": "green", "p-3": "cyan", "p-2": "yellow", "p-1": "magenta", "p-0": "red"}


class SharpeStudioGroup(click.Group):
    """Click group mapping failures to the documented exit codes: 1 usage, 2 parse, 3 degenerate data."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
            code = rv if isinstance(rv, int) else 0
        except click.ClickException as e:
            e.show()
            code = 1
        except click.exceptions.Abort:
            error_console.print("[yellow]Aborted[/yellow]")
            code = 1
        except SharpeStudioError as e:
            error_console.print(f"[red]Error:[/red] {escape(str(e))}", highlight=False)
            code = e.exit_code

        if standalone_mode:
            sys.exit(code)
        return code


def _resolve_periods(freq: str, custom: float | None) -> float:
    if custom is not None:
        if custom <= 0:
            raise click.BadParameter("must be > 0", param_hint="--periods-per-year")
        return custom
    return preset_periods_per_year(freq)


def _parse_rho(ctx, param, value: str) -> float | None:
    """'auto' or a number in (-1, 1)."""
    if value is None or value.lower() == "auto":
        return None
    try:
        rho = float(value)
    except ValueError:
        raise click.BadParameter(f"expected 'auto' or a number, got {value!r}") from None
    if not -1.0 < rho < 1.0:
        raise click.BadParameter(f"must satisfy |rho| < 1, got {rho}")
    return rho


def _frequency_options(command):
    command = click.option(
        "--periods-per-year", type=float, default=None, help="Custom annualization factor F (overrides --freq)"
    )(command)
    return click.option(
        "--freq",
        type=click.Choice(list(PERIODS_PER_YEAR), case_sensitive=False),
        default="daily",
        show_default=True,
        help="Observation frequency",
    )(command)


@click.group(cls=SharpeStudioGroup)
@click.version_option(package_name="sharpestudio")
@click.option("--debug", is_flag=True, help="Enable debug logging")
def cli(debug):
    """SharpeStudio - Skill or luck? Significance tests for Sharpe ratios"""
    if debug:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(message)s",
            handlers=[RichHandler(console=error_console, show_path=False)],
        )


def _print_report(report: Report) -> None:
    console.print(Panel.fit("[bold blue]SharpeStudio[/bold blue] 📈\nSkill or luck?", border_style="blue"))

    summary = Table(title="Series", show_header=False)
    summary.add_column("Quantity", style="cyan")
    summary.add_column("Value", style="green")
    summary.add_row("Kind", report.kind.value)
    summary.add_row("Observations", str(report.n))
    summary.add_row("Periods per year", f"{report.periods_per_year:g}")
    summary.add_row("Mean", f"{report.mean:.6g}")
    summary.add_row("Std", f"{report.std:.6g}")
    summary.add_row("Sharpe (per period)", f"{report.sr_period:.4f}")
    summary.add_row("Sharpe (square-root rule)", f"{report.sr_annual_sqrt:.4f}")
    summary.add_row("rho", f"{report.rho_hat:.4f} ({report.rho_source})")
    if report.rho_components is not None:
        components = report.rho_components
        summary.add_row("rho1 / rho2 / rho3", f"{components.rho1:.4f} / {components.rho2:.4f} / {components.rho3:.4f}")
    summary.add_row("delta", f"{report.delta:.4f}")
    summary.add_row("Sharpe (autocorrelation adjusted)", f"{report.sr_annual_adjusted:.4f}")
    summary.add_row("eta", f"{report.eta:.4f}")
    console.print(summary)

    verdicts = Table(title="Significance")
    verdicts.add_column("Test", style="cyan")
    verdicts.add_column("Statistic", justify="right")
    verdicts.add_column("Luck", justify="right")
    verdicts.add_column("Skill", justify="right")
    for verdict in report.tests:
        style = _SKILL_STYLES.get(verdict.color, "white")
        verdicts.add_row(
            registry_key(verdict.test),
            f"{verdict.statistic:.4f}",
            f"{verdict.luck:.2%}",
            f"[{style}]{verdict.skill:.2%}[/{style}]",
        )
    console.print(verdicts)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--kind", type=click.Choice([kind.value for kind in SeriesKind]), default="returns", show_default=True
)
@_frequency_options
@click.option("--rf", type=float, default=0.0, show_default=True, help="Per-period risk-free rate")
@click.option("--rho", default="auto", callback=_parse_rho, show_default=True, help="'auto' or a known value")
@click.option("--rho-method", type=click.Choice(list(RHO_METHODS)), default="recipe", show_default=True)
@click.option("--prices", is_flag=True, help="Values are prices; analyze their log returns")
@click.option("--test", "tests", multiple=True, type=click.Choice([kind.value for kind in TestKind]), help="Tests to run")
@click.option("--as-printed", is_flag=True, help="Printed forms of the rho3 estimator and modified Wald test")
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--verify", is_flag=True, hidden=True)
def analyze(file, kind, freq, periods_per_year, rf, rho, rho_method, prices, tests, as_printed, output_format, verify):
    """Test whether a series' Sharpe ratio shows skill"""
    series = load_series(
        file,
        kind=kind,
        periods_per_year=_resolve_periods(freq, periods_per_year),
        risk_free_per_period=rf,
        prices=prices,
    )

    if rho is None and series.n < SHORT_SERIES_WARNING:
        logger.warning(f"⚠️ Estimating rho from only {series.n} observations")
        error_console.print(
            f"[yellow]Warning:[/yellow] estimating rho from only {series.n} observations; "
            "consider passing --rho explicitly"
        )

    report = build_report(series, rho=rho, method=rho_method, tests=tests or None, as_printed=as_printed)
    if verify:
        verify_report(report, series, as_printed=as_printed)

    if output_format == "json":
        click.echo(report.to_json())
    else:
        _print_report(report)


@cli.command("min-sharpe")
@click.option("--test", "family", type=click.Choice(list(TEST_FAMILIES)), default="student", show_default=True)
@click.option("--tail", type=click.Choice([tail.value for tail in Tail]), default="two", show_default=True)
@click.option("--n", "n", type=click.IntRange(min=2), required=True, help="Number of observations")
@_frequency_options
@click.option("--rho", type=click.FloatRange(-1.0, 1.0, min_open=True, max_open=True), default=0.0, show_default=True)
@click.option("--confidence", type=click.FloatRange(0.0, 1.0, min_open=True, max_open=True), required=True)
@click.option("--as-printed", is_flag=True, help="Printed form of the modified Wald test")
def min_sharpe_command(family, tail, n, freq, periods_per_year, rho, confidence, as_printed):
    """Minimum annualized Sharpe ratio reaching a confidence level"""
    spec = make_spec(resolve_test(family, tail), n, _resolve_periods(freq, periods_per_year), rho, as_printed)
    click.echo(f"{min_sharpe(spec, confidence):.4f}")


def _custom_table_spec(kind, test, target, freq, rho, n_values, as_printed) -> TableSpec:
    if kind is None:
        raise click.UsageError("give --kind, --reference NAME or --all")
    frequency = Frequency(freq)
    return TableSpec.create(
        kind=kind,
        test=test,
        frequency=frequency,
        target=target,
        rho=rho,
        n_grid=tuple(sorted(set(n_values))) if n_values else None,
        printed_modified=as_printed,
    )


@cli.command()
@click.option("--kind", type=click.Choice([kind.value for kind in TableKind]), help="What the cells hold")
@click.option(
    "--test",
    type=click.Choice([kind.value for kind in TestKind]),
    default=TestKind.WALD_STUDENTIZED.value,
    show_default=True,
)
@click.option("--target", type=float, help="Skill level (min-sharpe-by-skill) or Sharpe level (skill-for-sharpe)")
@click.option(
    "--freq", type=click.Choice([frequency.value for frequency in Frequency]), default="daily", show_default=True
)
@click.option("--rho", type=float, default=0.0, show_default=True, help="rho of min-sharpe-by-confidence tables")
@click.option("--n", "n_values", type=click.IntRange(min=2), multiple=True, help="Column N values")
@click.option("--reference", "reference_name", help="Catalogued table name (see 'sharpestudio list')")
@click.option("--all", "all_tables", is_flag=True, help="Generate every catalogued table")
@click.option("--out", type=click.Path(), help="Output file (directory with --all); stdout when omitted")
@click.option("--html", "html_output", is_flag=True, help="Also write an HTML rendering")
@click.option("--workers", type=click.IntRange(min=1), help="Thread pool size")
@click.option("--as-printed", is_flag=True, help="Printed form of the modified Wald test")
def table(kind, test, target, freq, rho, n_values, reference_name, all_tables, out, html_output, workers, as_printed):
    """Generate a significance table"""
    if all_tables:
        out_dir = Path(out or "tables")
        written = generate_all(out_dir, html_output=html_output, workers=workers)
        console.print(f"[green]✓[/green] Wrote {len(written)} files to {out_dir}")
        return

    spec = reference_table(reference_name) if reference_name else _custom_table_spec(kind, test, target, freq, rho, n_values, as_printed)
    generated = generate(spec, workers=workers)

    if out is None:
        click.echo(render_html(generated) if html_output else render_csv(generated), nl=False)
        return

    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(generated), encoding="utf-8")
    written = [path]
    if html_output:
        written.append(path.with_suffix(".html"))
        written[1].write_text(render_html(generated), encoding="utf-8")
    console.print(f"[green]✓[/green] Table saved to {', '.join(str(p) for p in written)}")


@cli.command()
@click.option("--rho", type=float, default=0.0, show_default=True, help="True AR(1) autocorrelation")
@click.option("--sigma", type=float, default=0.01, show_default=True, help="Innovation volatility")
@click.option("--mu", type=float, default=0.0, show_default=True, help="Mean return")
@click.option("--rf", type=float, default=None, help="Per-period risk-free rate (defaults to --mu, the null)")
@click.option("--n", "n", type=click.IntRange(min=4), default=252, show_default=True, help="Observations per path")
@click.option("--reps", type=click.IntRange(min=1), default=10_000, show_default=True, help="Number of paths")
@click.option(
    "--alpha",
    "alphas",
    type=click.FloatRange(0.0, 1.0, min_open=True),
    multiple=True,
    help="Significance levels [default: 0.05]",
)
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Root seed")
@click.option("--test", "tests", multiple=True, type=click.Choice([kind.value for kind in TestKind]), help="Tests")
@_frequency_options
@click.option(
    "--innovations",
    type=click.Choice([law.value for law in InnovationLaw]),
    default=InnovationLaw.NORMAL.value,
    show_default=True,
)
@click.option("--rho-mode", type=click.Choice([mode.value for mode in RhoMode]), default="true", show_default=True)
@click.option("--rho-method", type=click.Choice(list(RHO_METHODS)), default="recipe", show_default=True)
@click.option("--as-printed", is_flag=True, help="Printed form of the rho3 estimator")
@click.option("--workers", type=click.IntRange(min=1), help="Thread pool size")
@click.option("--out", type=click.Path(dir_okay=False), help="Output CSV; stdout when omitted")
def simulate(
    rho,
    sigma,
    mu,
    rf,
    n,
    reps,
    alphas,
    seed,
    tests,
    freq,
    periods_per_year,
    innovations,
    rho_mode,
    rho_method,
    as_printed,
    workers,
    out,
):
    """Calibrate tests by Monte Carlo under the null"""
    try:
        params = Ar1Params(mu=mu, rho=rho, sigma=sigma)
        fields = {
            "params": params,
            "n": n,
            "replications": reps,
            "periods_per_year": _resolve_periods(freq, periods_per_year),
            "risk_free_per_period": mu if rf is None else rf,
            "innovations": innovations,
            "rho_mode": rho_mode,
            "rho_method": rho_method,
            "as_printed": as_printed,
            "workers": workers,
        }
        if seed is not None:
            fields["seed"] = seed
        base = SimulationConfig(**fields)
    except ValidationError as e:
        error = e.errors()[0]
        raise click.BadParameter(f"{error['msg']} ({'.'.join(str(part) for part in error['loc'])})") from None

    results = calibration_grid(
        tests or [TestKind.STUDENT_ONE_TAILED.value],
        [n],
        [rho],
        alphas or [0.05],
        base=base,
    )
    csv_text = to_csv_rows(results)
    if out is None:
        click.echo(csv_text, nl=False)
    else:
        Path(out).write_text(csv_text, encoding="utf-8")
        console.print(f"[green]✓[/green] Calibration saved to {out}")


@cli.command("list")
def list_command():
    """List available tests and reference tables"""
    tests_table = Table(title="Available Tests")
    tests_table.add_column("Name", style="cyan")
    tests_table.add_column("Tail", style="magenta")
    tests_table.add_column("Description", style="white")
    for name in test_registry.list_available():
        test_class = test_registry.get(name)
        tests_table.add_row(name, test_class.tail.value, test_class.description)
    console.print(tests_table)
    console.print()

    tables_table = Table(title="Reference Tables")
    tables_table.add_column("Name", style="cyan")
    tables_table.add_column("Description", style="white")
    for name in list_reference_tables():
        spec = reference_table(name)
        tables_table.add_row(name, spec.title or spec.file_stem)
    console.print(tables_table)


def main():
    """Main entry point for CLI"""
    cli()


if __name__ == "__main__":
    main()
