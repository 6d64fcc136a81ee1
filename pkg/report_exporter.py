"""
Report Exporter

This module provides export of suite reports to canonical JSON and CSV, the
matching JSON import, and DOT emission of the AR quiver of a cluster category
with an optional tilting subcategory highlighted.
"""

import csv
import io
import json
import logging
import os
from typing import Iterable, Optional

from cluster_category import CIndec, ClusterCategory
from lab_errors import ExportError
from report_models import InstanceRecord, SuiteReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = list(InstanceRecord.model_fields)


def report_to_json(report: SuiteReport, timing: bool = False) -> str:
    """Canonical JSON: sorted keys, fixed indent, no wall-clock time unless requested."""
    data = report.model_dump(mode="json")
    if not timing:
        data.pop("elapsed_seconds", None)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def report_from_json(text: str) -> SuiteReport:
    return SuiteReport.model_validate_json(text)


def report_to_csv(report: SuiteReport) -> str:
    """One row per instance record."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for record in report.records:
        writer.writerow(record.model_dump(mode="json"))
    return buffer.getvalue()


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def ar_quiver_to_dot(category: ClusterCategory, highlight: Optional[Iterable[CIndec]] = None) -> str:
    """DOT text of the AR quiver; highlighted vertices are filled."""
    graph = category.ar_quiver()
    marked = {str(x) for x in highlight or ()}
    lines = [f"digraph {_quote(f'A{category.rank}_m{category.orbit}')} {{", "  rankdir=LR;"]
    for node in sorted(graph.nodes):
        attributes = graph.nodes[node]
        label = f"{node}\\ntau = {attributes['tau']}"
        style = ', style=filled, fillcolor="lightblue"' if node in marked else ""
        lines.append(f"  {_quote(node)} [label={_quote(label)}{style}];")
    for source, target in sorted(graph.edges):
        weight = graph.edges[source, target].get("weight", 1)
        suffix = f" [label={_quote(str(weight))}]" if weight > 1 else ""
        lines.append(f"  {_quote(source)} -> {_quote(target)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(report: SuiteReport, format_type: str, timing: bool = False) -> str:
    if format_type == "json":
        return report_to_json(report, timing=timing)
    if format_type == "csv":
        return report_to_csv(report)
    raise ExportError(None, f"unknown format {format_type!r}")


def write_text(path: str, text: str) -> str:
    """
    Write text to path, creating parent directories.

    Raises:
        ExportError: If the path cannot be written
    """
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as e:
        raise ExportError(path, str(e)) from e
    logger.info(f"Wrote {path}")
    return path


def export_report(report: SuiteReport, path: str, format_type: str = "json", timing: bool = False) -> str:
    return write_text(path, render(report, format_type, timing=timing))
