"""Pipe-delimited tables, CSV and bar charts for matrices, summaries and evaluations.

Tables print values with two decimals without the leading zero (``.94``,
``-.89``); absent aspects print as ``0`` and undefined means as ``-``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Any, Sequence

from .aggregate import (
    MATRIX_COLUMNS,
    SUMMARY_COLUMNS,
    AirportAspectSummary,
    AspectMatrixRow,
    matrix_rows_to_csv,
    summaries_to_csv,
)
from .errors import UnsupportedFormat
from .evaluate import EvaluationReport
from .lexicon import MATRIX_ORDER

TARGETS = ("matrix", "summary", "evaluation")
FORMATS = ("plain-table", "csv", "bar-chart-image")
SORT_KEYS = ("aspect", "count")

_EXTENSIONS = {"plain-table": "txt", "csv": "csv", "bar-chart-image": "png"}


@dataclass(frozen=True)
class RenderSpec:
    target: str
    format: str = "plain-table"
    sort_key: str = "aspect"

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise ValueError(f"unknown render target {self.target!r}")
        if self.format not in FORMATS:
            raise UnsupportedFormat(self.target, self.format)
        if self.target == "evaluation" and self.format == "bar-chart-image":
            raise UnsupportedFormat(self.target, self.format)
        if self.sort_key not in SORT_KEYS:
            raise ValueError(f"unknown sort key {self.sort_key!r}")

    @property
    def filename(self) -> str:
        return f"{self.target}.{_EXTENSIONS[self.format]}"


def fmt2(value: float | None) -> str:
    """Two-decimal display value: 0.94 -> '.94', -0.89 -> '-.89', None -> '-'."""
    if value is None:
        return "-"
    text = f"{value:.2f}"
    if text.startswith("0."):
        return text[1:]
    if text.startswith("-0."):
        return "-" + text[2:]
    return text


def table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]

    def line(cells: Sequence[str]) -> str:
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    out = [line(header), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    out.extend(line(r) for r in rows)
    return "\n".join(out) + "\n"


def parse_table(text: str) -> list[dict[str, str]]:
    """Inverse of :func:`table`: one dict per body row."""
    lines = [ln for ln in text.splitlines() if ln.startswith("|")]
    split = lambda ln: [c.strip() for c in ln.strip()[1:-1].split("|")]  # noqa: E731
    header = split(lines[0])
    return [dict(zip(header, split(ln))) for ln in lines[2:]]


def _matrix_cells(row: AspectMatrixRow) -> list[str]:
    return (
        [row.review_id, row.airport_code, ";".join(row.keywords)]
        + [fmt2(row.values[a]) if row.present[a] else "0" for a in MATRIX_ORDER]
        + [str(row.mention_counts[a]) for a in MATRIX_ORDER]
    )


def _summary_lines(summaries: Sequence[AirportAspectSummary], sort_key: str) -> list[list[str]]:
    out = []
    for summary in sorted(summaries, key=lambda s: s.airport_code):
        items = list(summary.aspects.items())
        if sort_key == "count":
            items.sort(key=lambda kv: -kv[1].mention_count)  # stable: ties keep matrix order
        for aspect, s in items:
            out.append([
                summary.airport_code, aspect.value, str(summary.n_rows), str(s.present_row_count),
                str(s.positive_row_count), str(s.negative_row_count), str(s.mention_count),
                fmt2(s.mean_signed),
            ])
    return out


def _evaluation_cells(report: EvaluationReport) -> list[list[str]]:
    d = report.to_dict()
    return [[k, "-" if d[k] is None else (f"{d[k]:.4f}" if k == "accuracy" else str(d[k]))] for k in d]


def _bar_chart(labels: list[str], series: dict[str, list[float]], ylabel: str, title: str) -> bytes:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 4), dpi=100)
    width = 0.8 / max(1, len(series))
    for k, (name, values) in enumerate(series.items()):
        xs = [i + (k - (len(series) - 1) / 2) * width for i in range(len(labels))]
        ax.bar(xs, values, width=width, label=name)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if len(series) > 1:
        ax.legend()
    fig.tight_layout()
    buf = io.BytesIO()
    fig.savefig(buf, format="png", metadata={"Software": None})
    plt.close(fig)
    return buf.getvalue()


def _as_rows(data: Any) -> list[AspectMatrixRow]:
    rows = list(data)
    if not all(isinstance(r, AspectMatrixRow) for r in rows):
        raise TypeError("matrix target expects AspectMatrixRow items")
    return rows


def _as_summaries(data: Any) -> list[AirportAspectSummary]:
    items = [data] if isinstance(data, AirportAspectSummary) else list(data)
    if not all(isinstance(s, AirportAspectSummary) for s in items):
        raise TypeError("summary target expects AirportAspectSummary items")
    return items


def render(data: Any, spec: RenderSpec) -> tuple[bytes, str]:
    """Render ``data`` according to ``spec``; returns ``(content, filename)``."""
    if spec.target == "matrix":
        rows = _as_rows(data)
        if spec.sort_key == "count":
            rows.sort(key=lambda r: -r.n_mentions)
        if spec.format == "csv":
            return matrix_rows_to_csv(rows).encode("utf-8"), spec.filename
        if spec.format == "plain-table":
            return table(MATRIX_COLUMNS, [_matrix_cells(r) for r in rows]).encode("utf-8"), spec.filename
        labels = [a.value for a in MATRIX_ORDER]
        counts = [float(sum(1 for r in rows if r.present[a])) for a in MATRIX_ORDER]
        return _bar_chart(labels, {"reviews": counts}, "reviews mentioning aspect", "Aspect coverage"), spec.filename

    if spec.target == "summary":
        summaries = _as_summaries(data)
        if spec.format == "csv":
            return summaries_to_csv(sorted(summaries, key=lambda s: s.airport_code)).encode("utf-8"), spec.filename
        if spec.format == "plain-table":
            return table(SUMMARY_COLUMNS, _summary_lines(summaries, spec.sort_key)).encode("utf-8"), spec.filename
        labels = [a.value for a in MATRIX_ORDER]
        series = {
            s.airport_code: [s.aspects[a].mean_signed or 0.0 for a in MATRIX_ORDER]
            for s in sorted(summaries, key=lambda s: s.airport_code)
        }
        return _bar_chart(labels, series, "mean signed sentiment", "Sentiment per airport service"), spec.filename

    if not isinstance(data, EvaluationReport):
        raise TypeError("evaluation target expects an EvaluationReport")
    if spec.format == "csv":
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("field", "value"))
        writer.writerows((k, "" if v is None else v) for k, v in data.to_dict().items())
        return buf.getvalue().encode("utf-8"), spec.filename
    return table(("field", "value"), _evaluation_cells(data)).encode("utf-8"), spec.filename
