import click

from codim.cli_tools import json_option, no_pager_option, output_format_option, render


@click.command(short_help="List built-in spaces, immersions, bundles and scenarios.")
@click.argument("filter_text", required=False, default="")
@json_option()
@output_format_option()
@no_pager_option()
def catalog(filter_text: str, as_json: bool, output_format: str, no_pager: bool):
    """List catalog entries whose name contains FILTER_TEXT (all of them by default)."""
    from codim.catalog import list_catalog

    render(list_catalog(filter_text), "json" if as_json else output_format, no_pager=no_pager)
