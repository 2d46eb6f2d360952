"""Per-review aspect matrix rows and per-airport aspect summaries."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .corpus import ReviewRecord
from .errors import AirportMismatch, MalformedRow, MentionReviewMismatch
from .lexicon import MATRIX_ORDER, Aspect
from .scoring import ScoredMention

MATRIX_COLUMNS: tuple[str, ...] = (
    ("review_id", "airport", "keywords")
    + tuple(a.value for a in MATRIX_ORDER)
    + tuple(f"{a.value}_n" for a in MATRIX_ORDER)
)

SUMMARY_COLUMNS = (
    "airport", "aspect", "n_rows", "present_row_count", "positive_row_count",
    "negative_row_count", "mention_count", "mean_signed",
)

SUMMARY_POLICY = "mean over reviews mentioning the aspect; each review weighted equally"


def exact_mean(values: Sequence[float]) -> float:
    """Correctly rounded mean, independent of the order of ``values``."""
    return float(sum(map(Fraction, values), Fraction(0)) / len(values))


@dataclass(frozen=True)
class AspectMatrixRow:
    review_id: str
    airport_code: str
    keywords: tuple[str, ...]
    values: Mapping[Aspect, float]
    present: Mapping[Aspect, bool]
    mention_counts: Mapping[Aspect, int]

    @property
    def n_mentions(self) -> int:
        return sum(self.mention_counts.values())

    @property
    def any_present(self) -> bool:
        return any(self.present.values())


def empty_row(review_id: str, airport_code: str) -> AspectMatrixRow:
    return AspectMatrixRow(
        review_id, airport_code, (),
        {a: 0.0 for a in MATRIX_ORDER},
        {a: False for a in MATRIX_ORDER},
        {a: 0 for a in MATRIX_ORDER},
    )


def build_row(review: ReviewRecord, scored: Iterable[ScoredMention]) -> AspectMatrixRow:
    """Average the signed mention values of each aspect for one review.

    Aspects with no mention are zero-filled and flagged absent.  Keywords are
    the matched terms in order of first occurrence.
    """
    mentions = sorted(scored, key=lambda sm: sm.mention.sort_key)
    per_aspect: dict[Aspect, list[float]] = {a: [] for a in MATRIX_ORDER}
    keywords: list[str] = []
    for sm in mentions:
        if sm.mention.review_id != review.review_id:
            raise MentionReviewMismatch(review.review_id, sm.mention.review_id)
        per_aspect[sm.mention.aspect].append(sm.signed)
        if sm.mention.matched_term not in keywords:
            keywords.append(sm.mention.matched_term)
    values = {a: exact_mean(v) if v else 0.0 for a, v in per_aspect.items()}
    return AspectMatrixRow(
        review.review_id,
        review.airport_code,
        tuple(keywords),
        values,
        {a: bool(v) for a, v in per_aspect.items()},
        {a: len(v) for a, v in per_aspect.items()},
    )


@dataclass(frozen=True)
class AspectSummary:
    mean_signed: float | None
    mention_count: int
    positive_row_count: int
    negative_row_count: int
    present_row_count: int


@dataclass(frozen=True)
class AirportAspectSummary:
    airport_code: str
    n_rows: int
    aspects: Mapping[Aspect, AspectSummary]

    def to_dict(self) -> dict[str, Any]:
        return {
            "airport": self.airport_code,
            "n_rows": self.n_rows,
            "aspects": {
                a.value: {
                    "mean_signed": s.mean_signed,
                    "mention_count": s.mention_count,
                    "present_row_count": s.present_row_count,
                    "positive_row_count": s.positive_row_count,
                    "negative_row_count": s.negative_row_count,
                }
                for a, s in self.aspects.items()
            },
        }


def summarize(rows: Iterable[AspectMatrixRow], airport_code: str) -> AirportAspectSummary:
    """Fold matrix rows of one airport into per-aspect statistics.

    Means run over rows where the aspect is present and are ``None`` when
    no row mentions it.  Rows whose value is exactly 0 count as neither
    positive nor negative.
    """
    rows = sorted(rows, key=lambda r: r.review_id)
    for row in rows:
        if row.airport_code != airport_code:
            raise AirportMismatch(airport_code, row.airport_code, row.review_id)
    aspects = {}
    for aspect in MATRIX_ORDER:
        present = [r.values[aspect] for r in rows if r.present[aspect]]
        aspects[aspect] = AspectSummary(
            mean_signed=exact_mean(present) if present else None,
            mention_count=sum(r.mention_counts[aspect] for r in rows),
            positive_row_count=sum(1 for v in present if v > 0),
            negative_row_count=sum(1 for v in present if v < 0),
            present_row_count=len(present),
        )
    return AirportAspectSummary(airport_code, len(rows), aspects)


def summarize_by_airport(
    rows: Iterable[AspectMatrixRow], airports: Iterable[str] = ()
) -> list[AirportAspectSummary]:
    """One summary per airport found in ``rows`` (plus any extra ``airports``), sorted by code."""
    grouped: dict[str, list[AspectMatrixRow]] = {a: [] for a in airports}
    for row in rows:
        grouped.setdefault(row.airport_code, []).append(row)
    return [summarize(grouped[code], code) for code in sorted(grouped)]


# ---------------------------------------------------------------------------
# serialization


def format_value(value: float, present: bool) -> str:
    # absent cells are a bare "0"; present ones use repr, so a present zero mean is "0.0"
    return repr(float(value)) if present else "0"


def matrix_rows_to_csv(rows: Iterable[AspectMatrixRow]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(MATRIX_COLUMNS)
    for row in rows:
        writer.writerow(
            [row.review_id, row.airport_code, ";".join(row.keywords)]
            + [format_value(row.values[a], row.present[a]) for a in MATRIX_ORDER]
            + [str(row.mention_counts[a]) for a in MATRIX_ORDER]
        )
    return buf.getvalue()


def write_matrix_csv(rows: Iterable[AspectMatrixRow], path: str | Path) -> None:
    Path(path).write_text(matrix_rows_to_csv(rows), encoding="utf-8", newline="")


def read_matrix_csv(path: str | Path) -> list[AspectMatrixRow]:
    """Parse a matrix CSV; presence is recovered from the ``*_n`` count columns."""
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(text, newline=""))
    missing = [c for c in MATRIX_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise MalformedRow(f"matrix header lacks {missing}", row=0)
    rows = []
    for i, rec in enumerate(reader, start=1):
        try:
            counts = {a: int(rec[f"{a.value}_n"]) for a in MATRIX_ORDER}
            values = {a: float(rec[a.value]) for a in MATRIX_ORDER}
        except (TypeError, ValueError) as exc:
            raise MalformedRow(f"bad matrix cell: {exc}", row=i) from None
        kw = rec["keywords"]
        rows.append(AspectMatrixRow(
            rec["review_id"], rec["airport"], tuple(kw.split(";")) if kw else (),
            values, {a: counts[a] > 0 for a in MATRIX_ORDER}, counts,
        ))
    return rows


def summaries_to_csv(summaries: Iterable[AirportAspectSummary]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for summary in summaries:
        for aspect, s in summary.aspects.items():
            writer.writerow([
                summary.airport_code, aspect.value, summary.n_rows, s.present_row_count,
                s.positive_row_count, s.negative_row_count, s.mention_count,
                "" if s.mean_signed is None else repr(s.mean_signed),
            ])
    return buf.getvalue()


def summaries_to_json(summaries: Iterable[AirportAspectSummary], metadata: Mapping[str, Any] | None = None) -> str:
    doc = {
        "metadata": {"summary_mean": SUMMARY_POLICY, **(metadata or {})},
        "airports": [s.to_dict() for s in summaries],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
