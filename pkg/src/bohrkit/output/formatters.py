"""Table, JSON and CSV emitters for reports."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from typing import Any

from rich.console import Console
from rich.table import Table
from rich.text import Text

from bohrkit.models.result import BoundReport, CheckReport, RadiusEstimate

SWEEP_COLUMNS = ("n", "formula_id", "role", "value", "certified")


def _number(x: float) -> str:
    return f"{x:.6g}"


def to_json(payload: Any) -> str:
    """Stable JSON text: fixed key order from the report objects, no timestamps."""
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False)


def bound_rows(reports: Iterable[BoundReport]) -> list[dict[str, Any]]:
    return [report.to_dict() for report in reports]


def sweep_csv(rows: Sequence[tuple[int, BoundReport]]) -> str:
    """CSV with one row per (n, formula) in the stable sweep column order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for n, report in rows:
        writer.writerow([n, report.formula_id, report.role, repr(report.value), str(report.certified).lower()])
    return buffer.getvalue()


def reports_csv(reports: Sequence[BoundReport]) -> str:
    """CSV for non-sweep bound runs; n is taken from the report params when present."""
    return sweep_csv([(report.params.get("n", ""), report) for report in reports])


def format_bounds_table(reports: Sequence[BoundReport], console: Console) -> None:
    """Display bound reports in a Rich table."""
    table = Table(title="Bohr radius bounds", show_header=True, header_style="bold", padding=(0, 1))
    table.add_column("Formula", style="bold")
    table.add_column("Role")
    table.add_column("Radius", justify="center")
    table.add_column("Value", justify="right")
    table.add_column("Status")
    table.add_column("Note", ratio=1)

    for report in reports:
        status_style = "status.certified" if report.certified else "status.shape"
        table.add_row(
            report.formula_id,
            Text(report.role, style=f"role.{report.role}"),
            report.radius,
            Text(_number(report.value), style="value"),
            Text(report.status_label, style=status_style),
            Text(report.note, style="note"),
        )
    console.print(table)


def format_radius_table(estimate: RadiusEstimate, console: Console) -> None:
    """Display a radius estimate with its per-member margins."""
    console.print(
        f"\n[header]{estimate.family_id}[/header] on {estimate.params.get('space', '?')}: "
        f"R ∈ [[value]{_number(estimate.lower_bracket)}[/value], [value]{_number(estimate.upper_bracket)}[/value]]"
        f" ({'certified norms' if estimate.certified else 'sampled norms'})"
    )
    table = Table(show_header=True, header_style="bold", padding=(0, 1))
    table.add_column("Function", style="bold")
    table.add_column("Critical r", justify="right")
    table.add_column("Margin at R", justify="right")
    table.add_column("Norm")
    for item in sorted(estimate.per_function_margins, key=lambda m: m.critical_r):
        table.add_row(
            item.function_id,
            _number(item.critical_r),
            _number(item.margin),
            Text("certified" if item.certified else "sampled", style="status.certified" if item.certified else "status.shape"),
        )
    console.print(table)
    for note in estimate.notes:
        console.print(f"  [note]{note}[/note]")


def format_checks_table(reports: Sequence[CheckReport], console: Console) -> None:
    """One row per check: name, pass, worst margin, uncertainty."""
    table = Table(title="Verification", show_header=True, header_style="bold", padding=(0, 1))
    table.add_column("Check", style="bold")
    table.add_column("Pass")
    table.add_column("Worst margin", justify="right")
    table.add_column("Uncertainty", justify="right")
    for report in reports:
        table.add_row(
            report.name,
            Text(report.status_label, style="status.pass" if report.passed else "status.fail"),
            _number(report.worst_margin),
            _number(report.uncertainty),
        )
    console.print(table)


def format_norms_table(rows: Sequence[dict[str, Any]], console: Console) -> None:
    """Display space invariants as quantity/value/method rows."""
    table = Table(title="Space invariants", show_header=True, header_style="bold", padding=(0, 1))
    table.add_column("Quantity", style="bold")
    table.add_column("Value", justify="right")
    table.add_column("Method")
    for row in rows:
        value = row["value"]
        shown = _number(value) if isinstance(value, float) else str(value)
        table.add_row(row["quantity"], Text(shown, style="value"), row.get("method", ""))
    console.print(table)


def rows_csv(rows: Sequence[dict[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()
