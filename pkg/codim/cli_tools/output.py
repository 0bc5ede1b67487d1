import csv
import json
from collections.abc import Sequence
from pathlib import Path

import click

from codim.model.report import CheckReport, RunReport

PAGER_THRESHOLD = 25

TRACE_HEADER = ("check", "sample", "residual")


def check_record(report: CheckReport) -> dict:
    return {
        "check": report.name,
        "status": report.status.value.upper(),
        "residual": report.residual,
        "tol": report.tol,
        "expected": report.expected or "pass",
        "met": report.meets_expectation,
    }


def render(
    records: list[dict],
    output_format: str = "table",
    *,
    no_pager: bool = False,
    threshold: int = PAGER_THRESHOLD,
) -> None:
    """
    Emit records as an aligned table (default) or JSON, paging long tables.
    """
    if output_format == "json":
        click.echo(json.dumps(records, indent=2, default=str))
        return

    text = table(records)
    if not no_pager and len(records) >= threshold:
        click.echo_via_pager(text)
        return

    click.echo(text)


def table(records: Sequence[dict]) -> str:
    if not records:
        return "(empty)"

    headers = list(records[0])
    cells = [[_fmt(record.get(h, "")) for h in headers] for record in records]
    widths = [max(len(h), *(len(row[i]) for row in cells)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths, strict=True)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend(
        "  ".join(c.ljust(w) for c, w in zip(row, widths, strict=True)).rstrip() for row in cells
    )
    return "\n".join(lines)


def render_run(
    report: RunReport, output_format: str = "table", deterministic: bool = False
) -> None:
    if output_format == "json":
        click.echo(report.to_json(deterministic=deterministic))
        return

    name = report.scenario.get("name", "scenario")
    click.echo(f"Scenario {name} (seed {report.seed})")
    click.echo(table([check_record(check) for check in report.checks]))
    for check in report.checks:
        if check.location and not check.passed:
            click.echo(f"  {check.name}: worst at {check.location}")
        if error := check.details.get("error"):
            click.echo(f"  {check.name}: {error}")

    click.echo(f"Verdict: {report.verdict.value.upper()}")


def write_trace(reports: Sequence[CheckReport], path: Path) -> int:
    """
    Write ``check,sample,residual`` rows; returns the number of rows.
    """
    rows = 0
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(TRACE_HEADER)
        for report in reports:
            for sample, residual in report.trace:
                writer.writerow((report.name, repr(float(sample)), repr(float(residual))))
                rows += 1

    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.3e}"
    if isinstance(value, list | tuple):
        return ",".join(_fmt(x) for x in value)
    return str(value)
