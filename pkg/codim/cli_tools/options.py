from collections.abc import Callable
from pathlib import Path

import click

OUTPUT_FORMATS = ("table", "json")


def output_format_option() -> Callable:
    return click.option(
        "--output-format",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS, case_sensitive=False),
        default="table",
        envvar="CODIM_OUTPUT_FORMAT",
        show_default=True,
        help="Output format.",
    )


def json_option() -> Callable:
    return click.option(
        "--json",
        "as_json",
        is_flag=True,
        default=False,
        help="Shorthand for --output-format json.",
    )


def no_pager_option() -> Callable:
    return click.option(
        "--no-pager",
        "no_pager",
        is_flag=True,
        default=False,
        envvar="CODIM_NO_PAGER",
        help="Disable paging output regardless of length.",
    )


def out_option() -> Callable:
    return click.option(
        "--out",
        "out",
        type=click.Path(dir_okay=False, writable=True, path_type=Path),
        default=None,
        help="Also write the machine-readable report to this file.",
    )


def trace_option() -> Callable:
    return click.option(
        "--trace",
        "trace",
        type=click.Path(dir_okay=False, writable=True, path_type=Path),
        default=None,
        help="Write per-sample residuals of every check as CSV.",
    )
