"""Loading and scrubbing of traveller review corpora.

Only four fields survive ingestion: review id, airport code, review text and
the 1..5 star rating.  Anything else a scraper exports (reviewer name, photo
URL, timestamps, ...) is dropped on the way in.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping

from .errors import DuplicateReviewId, MalformedRow, MissingRequiredField, RatingOutOfRange

FIELDS = ("review_id", "airport", "text", "rating")

# accepted spellings of the canonical keys in input files
FIELD_ALIASES = {
    "review_id": ("review_id", "id"),
    "airport": ("airport", "airport_code"),
    "text": ("text",),
    "rating": ("rating",),
}

FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class ReviewRecord:
    review_id: str
    airport_code: str
    text: str
    rating: int

    def __post_init__(self) -> None:
        if isinstance(self.rating, bool) or not isinstance(self.rating, int):
            raise MalformedRow(f"rating must be an integer, got {self.rating!r}")
        if not 1 <= self.rating <= 5:
            raise RatingOutOfRange(self.rating)

    def to_raw(self) -> dict[str, str]:
        """Inverse of :func:`scrub_fields` (file-level key names, string values)."""
        return {
            "review_id": self.review_id,
            "airport": self.airport_code,
            "text": self.text,
            "rating": str(self.rating),
        }


@dataclass(frozen=True)
class Corpus:
    records: tuple[ReviewRecord, ...]
    source_path: str = ""
    _by_id: dict[str, ReviewRecord] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        records = tuple(self.records)
        object.__setattr__(self, "records", records)
        by_id: dict[str, ReviewRecord] = {}
        for row, rec in enumerate(records, start=1):
            if rec.review_id in by_id:
                raise DuplicateReviewId(rec.review_id, row=row)
            by_id[rec.review_id] = rec
        object.__setattr__(self, "_by_id", by_id)

    @property
    def airport_codes(self) -> frozenset[str]:
        return frozenset(r.airport_code for r in self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ReviewRecord]:
        return iter(self.records)

    def __contains__(self, review_id: object) -> bool:
        return review_id in self._by_id

    def get(self, review_id: str) -> ReviewRecord | None:
        return self._by_id.get(review_id)

    def counts_by_airport(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for rec in self.records:
            counts[rec.airport_code] = counts.get(rec.airport_code, 0) + 1
        return dict(sorted(counts.items()))

    @property
    def n_empty_text(self) -> int:
        return sum(1 for r in self.records if not r.text.strip())

    def filter_airports(self, codes: Iterable[str]) -> "Corpus":
        wanted = set(codes)
        return Corpus(tuple(r for r in self.records if r.airport_code in wanted), self.source_path)


def _lookup(raw: Mapping[str, Any], name: str) -> Any:
    for key in FIELD_ALIASES[name]:
        if key in raw and raw[key] is not None:
            return raw[key]
    raise MissingRequiredField(name)


def _parse_rating(value: Any) -> int:
    if isinstance(value, bool):
        raise MalformedRow(f"rating is not an integer: {value!r}")
    if isinstance(value, int):
        rating = value
    elif isinstance(value, float):
        if not value.is_integer():
            raise MalformedRow(f"rating is not an integer: {value!r}")
        rating = int(value)
    else:
        text = str(value).strip()
        try:
            rating = int(text)
        except ValueError:
            try:
                as_float = float(text)
            except ValueError:
                raise MalformedRow(f"rating is not an integer: {value!r}") from None
            if not as_float.is_integer():
                raise MalformedRow(f"rating is not an integer: {value!r}") from None
            rating = int(as_float)
    if not 1 <= rating <= 5:
        raise RatingOutOfRange(value)
    return rating


def scrub_fields(raw_record: Mapping[str, Any]) -> ReviewRecord:
    """Keep the four canonical fields of ``raw_record`` and drop the rest.

    ``id`` and ``airport_code`` are accepted as spellings of ``review_id``
    and ``airport``.  A missing/null text becomes the empty string; missing
    ids, airports or ratings raise :class:`MissingRequiredField`.
    """
    review_id = str(_lookup(raw_record, "review_id")).strip()
    airport = str(_lookup(raw_record, "airport")).strip()
    try:
        text = _lookup(raw_record, "text")
    except MissingRequiredField:
        text = ""
    rating = _parse_rating(_lookup(raw_record, "rating"))
    if not review_id:
        raise MalformedRow("empty review_id")
    if not airport:
        raise MalformedRow("empty airport code")
    if not isinstance(text, str):
        raise MalformedRow(f"text must be a string, got {type(text).__name__}")
    return ReviewRecord(review_id, airport, text, rating)


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        row = data[: exc.start].count(b"\n")
        raise MalformedRow(f"invalid UTF-8 at byte {exc.start}", row=row) from None


def _with_row(exc: Exception, row: int) -> Exception:
    if isinstance(exc, MissingRequiredField):
        return MissingRequiredField(exc.field, row=row)
    if isinstance(exc, RatingOutOfRange):
        return RatingOutOfRange(exc.value, row=row)
    if isinstance(exc, MalformedRow):
        return MalformedRow(exc.reason, row=row)
    return exc


def _iter_csv(text: str) -> Iterator[tuple[int, dict[str, Any]]]:
    reader = csv.DictReader(io.StringIO(text, newline=""), strict=True)
    try:
        header = reader.fieldnames or []
    except csv.Error as exc:
        raise MalformedRow(f"unreadable header: {exc}", row=0) from None
    for name in ("review_id", "airport", "rating"):
        if not any(alias in header for alias in FIELD_ALIASES[name]):
            raise MalformedRow(f"header lacks column {name!r}", row=0)
    if "text" not in header:
        raise MalformedRow("header lacks column 'text'", row=0)
    row = 0
    while True:
        try:
            item = next(reader)
        except StopIteration:
            return
        except csv.Error as exc:
            raise MalformedRow(str(exc), row=row + 1) from None
        row += 1
        if None in item:
            raise MalformedRow("more cells than header columns", row=row)
        if any(v is None for v in item.values()):
            raise MalformedRow("fewer cells than header columns", row=row)
        yield row, item


def _iter_jsonl(text: str) -> Iterator[tuple[int, dict[str, Any]]]:
    # split on \n only: str.splitlines would also break on U+2028 inside strings
    for row, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            continue
        try:
            item = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRow(f"invalid JSON: {exc.msg}", row=row) from None
        if not isinstance(item, dict):
            raise MalformedRow("line is not a JSON object", row=row)
        yield row, item


def infer_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix in ("jsonl", "ndjson"):
        return "jsonl"
    if suffix == "csv":
        return "csv"
    raise ValueError(f"cannot infer format from {str(path)!r}; pass csv or jsonl")


def load_reviews(path: str | Path, format: str | None = None) -> Corpus:
    """Read a CSV or JSONL review file into a validated :class:`Corpus`.

    Rows are numbered from 1 (the CSV header is row 0) in error messages.
    Records keep file order.
    """
    fmt = format or infer_format(path)
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    text = _decode(Path(path).read_bytes())
    rows = _iter_csv(text) if fmt == "csv" else _iter_jsonl(text)
    records = []
    seen: set[str] = set()
    for row, raw in rows:
        try:
            rec = scrub_fields(raw)
        except (MalformedRow, MissingRequiredField, RatingOutOfRange) as exc:
            raise _with_row(exc, row) from None
        if rec.review_id in seen:
            raise DuplicateReviewId(rec.review_id, row=row)
        seen.add(rec.review_id)
        records.append(rec)
    return Corpus(tuple(records), str(path))


def write_reviews(records: Iterable[ReviewRecord], path: str | Path, format: str | None = None) -> None:
    """Serialize canonical records; ``load_reviews`` reads them back unchanged."""
    fmt = format or infer_format(path)
    path = Path(path)
    if fmt == "csv":
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=FIELDS, quoting=csv.QUOTE_MINIMAL)
            writer.writeheader()
            for rec in records:
                writer.writerow(rec.to_raw())
    elif fmt == "jsonl":
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for rec in records:
                obj = rec.to_raw()
                obj["rating"] = rec.rating
                fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
