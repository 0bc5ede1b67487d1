from codim.cli_tools.options import (
    OUTPUT_FORMATS,
    json_option,
    no_pager_option,
    out_option,
    output_format_option,
    trace_option,
)
from codim.cli_tools.output import check_record, render, render_run, table, write_trace

__all__ = [
    "OUTPUT_FORMATS",
    "check_record",
    "json_option",
    "no_pager_option",
    "out_option",
    "output_format_option",
    "render",
    "render_run",
    "table",
    "trace_option",
    "write_trace",
]
