"""Text, JSON and LaTeX renderings of a report."""
import json
from typing import List

from ..schemas.report import CheckRecord, OutputFormat, Report

_STATUS_TAGS = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP", "error": "ERROR"}


def _record_line(record: CheckRecord) -> str:
    tag = _STATUS_TAGS[record.status.value]
    line = f"[{tag}] {record.check} {record.identifier}"
    if record.values:
        line += "  " + "  ".join(f"{key}={value}" for key, value in record.values.items())
    if record.wall_time_ms is not None:
        line += f"  ({record.wall_time_ms:.1f} ms)"
    return line


def render_text(report: Report) -> str:
    lines: List[str] = [f"virnorm {report.command}"]
    for key, value in report.notes.items():
        lines.append(f"  {key}: {value}")
    for record in report.records:
        lines.append(_record_line(record))
        if record.reference:
            lines.append(f"    reference: {record.reference}")
        if record.diff and not record.passed:
            lines.append(f"    diff: {record.diff}")
    counts = ", ".join(f"{count} {status}" for status, count in report.counts().items() if count)
    lines.append(f"overall: {report.overall.value} ({counts or 'no records'})")
    return "\n".join(lines) + "\n"


def render_json(report: Report, timings: bool = False) -> str:
    """Sorted JSON; wall times only on request, so plain runs stay byte-identical."""
    data = report.model_dump(mode="json")
    if timings:
        for entry, record in zip(data["records"], report.records):
            entry["wall_time_ms"] = record.wall_time_ms
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def render_latex(report: Report) -> str:
    """LaTeX bodies of the records that carry one; a status table otherwise."""
    bodies = [record.latex for record in report.records if record.latex]
    if bodies:
        return "\n".join(bodies) + "\n"
    lines = [r"\begin{tabular}{lll}", r"check & instance & status \\", r"\hline"]
    for record in report.records:
        identifier = record.identifier.replace("_", r"\_")
        lines.append(f"{record.check} & {identifier} & {record.status.value} \\\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


RENDERERS = {
    OutputFormat.TEXT: render_text,
    OutputFormat.JSON: render_json,
    OutputFormat.LATEX: render_latex,
}


def render(report: Report, output_format: OutputFormat, timings: bool = False) -> str:
    if output_format == OutputFormat.JSON:
        return render_json(report, timings=timings)
    return RENDERERS[output_format](report)
