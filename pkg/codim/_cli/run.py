from pathlib import Path

import click

from codim._cli._context import CLIContext, pass_cli_context, seed_option, tol_scale_option
from codim.cli_tools import (
    json_option,
    out_option,
    output_format_option,
    render_run,
    trace_option,
    write_trace,
)
from codim.exceptions import CatalogError, ScenarioError

EXIT_USAGE = 2


class ScenarioLoadError(click.ClickException):
    """
    A scenario that does not parse, validate or resolve. Exits with status 2.
    """

    exit_code = EXIT_USAGE


def _load(source: str):
    from codim.catalog import builtin_scenario, scenario_names
    from codim.model.scenario import load_scenario

    path = Path(source)
    if path.exists():
        return load_scenario(path)

    if source in scenario_names():
        return builtin_scenario(source)

    raise ScenarioError(
        f"No such file, and not a built-in scenario ({', '.join(scenario_names())}).",
        path=source,
    )


@click.command(short_help="Run the checks of a scenario.")
@click.argument("scenario")
@out_option()
@trace_option()
@seed_option()
@tol_scale_option()
@json_option()
@output_format_option()
@click.option(
    "--deterministic",
    is_flag=True,
    default=False,
    help="Leave wall time out of the machine-readable report.",
)
@pass_cli_context
@click.pass_context
def run(
    ctx: click.Context,
    cli_ctx: CLIContext,
    scenario: str,
    out: Path | None,
    trace: Path | None,
    as_json: bool,
    output_format: str,
    deterministic: bool,
):
    """
    Run SCENARIO, a TOML scenario file or the name of a built-in scenario.

    Exits 0 when every check meets its expected outcome, 1 on a mismatch and 2 when the
    scenario cannot be loaded.
    """
    from codim.runner import run_scenario

    try:
        parsed = _load(scenario)
        report = run_scenario(parsed, config=cli_ctx.numerics(), seed=cli_ctx.seed)
    except (ScenarioError, CatalogError) as err:
        raise ScenarioLoadError(str(err)) from err

    render_run(report, "json" if as_json else output_format, deterministic=deterministic)
    if out is not None:
        out.write_text(report.to_json(deterministic=deterministic) + "\n", encoding="utf-8")

    if trace is not None:
        rows = write_trace(report.checks, trace)
        click.echo(f"Wrote {rows} trace rows to {trace}.", err=True)

    ctx.exit(report.exit_code)
