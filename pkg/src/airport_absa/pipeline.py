"""End-to-end run: corpus -> sentences -> mentions -> scores -> matrix -> summaries.

Every data artifact is a pure function of the configuration when the scorer
is deterministic; only ``manifest.json`` carries timestamps and durations.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

from .aggregate import (
    AspectMatrixRow,
    build_row,
    matrix_rows_to_csv,
    summaries_to_csv,
    summaries_to_json,
    summarize_by_airport,
)
from .corpus import ReviewRecord, load_reviews
from .errors import ManifestMismatch, ReviewProcessingError, ScorerUnavailable
from .evaluate import POSITIVE_THRESHOLD, compute_accuracy
from .lexicon import AspectLexicon, find_mentions, load_lexicon
from .preprocess import SpellDictionary, correct_spelling, default_dictionary, segment_sentences
from .report import RenderSpec, render
from .scoring import Scorer, ScoredMention, resolve_scorer

log = logging.getLogger(__name__)

MATRIX_FILE = "matrix.csv"
SUMMARY_CSV = "summary.csv"
SUMMARY_JSON = "summary.json"
EVALUATION_JSON = "evaluation.json"
EVALUATION_TXT = "evaluation.txt"
MANIFEST_FILE = "manifest.json"


@dataclass(frozen=True)
class PipelineConfig:
    input_path: str
    output_dir: str
    input_format: str | None = None
    lexicon_source: str = "builtin"
    dictionary_path: str | None = None
    scorer_name: str = "oracle"
    airport_filter: tuple[str, ...] | None = None
    evaluation_enabled: bool = False
    positive_threshold: int = POSITIVE_THRESHOLD
    workers: int = 1
    scorer_timeout: float = 30.0
    seed: int | None = None  # accepted for CLI compatibility; the run is deterministic

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["airport_filter"] = list(self.airport_filter) if self.airport_filter is not None else None
        return d


@dataclass
class RunManifest:
    config: dict[str, Any]
    corpus_counts: dict[str, int]
    analyzed_counts: dict[str, int]
    n_empty_text: int
    lexicon_term_count: int
    scorer: dict[str, Any]
    duration_s: float
    artifacts: list[dict[str, Any]] = field(default_factory=list)
    failures: list[dict[str, Any]] = field(default_factory=list)
    created_at: str = ""

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class ReviewResult:
    row: AspectMatrixRow
    mentions: tuple[ScoredMention, ...]


def analyze_review(
    record: ReviewRecord,
    lexicon: AspectLexicon,
    dictionary: SpellDictionary,
    scorer: Scorer,
) -> ReviewResult:
    """Run one review through segmentation, correction, matching and scoring."""
    scored: list[ScoredMention] = []
    index: int | None = None
    try:
        for sentence in segment_sentences(record.text, record.review_id):
            index = sentence.index
            sentence = correct_spelling(sentence, dictionary)
            for mention in find_mentions(sentence, lexicon):
                start, end = mention.span
                score = scorer.score(sentence.corrected_text, sentence.corrected_text[start:end])
                scored.append(ScoredMention(mention, score))
        index = None
        row = build_row(record, scored)
    except ScorerUnavailable as exc:
        raise ScorerUnavailable(
            f"review {record.review_id!r}, sentence {index}: {exc}",
            review_id=record.review_id, sentence_index=index,
        ) from exc
    except Exception as exc:
        raise ReviewProcessingError(record.review_id, index, exc) from exc
    return ReviewResult(row, tuple(scored))


def analyze_corpus(
    records: Sequence[ReviewRecord],
    lexicon: AspectLexicon,
    dictionary: SpellDictionary,
    scorer: Scorer,
    workers: int = 1,
) -> tuple[list[AspectMatrixRow], list[ReviewProcessingError]]:
    """Matrix rows sorted by review id, plus the reviews that failed.

    Reviews fan out over threads only when the scorer declares itself
    reentrant; results do not depend on the schedule.
    """

    def one(record: ReviewRecord) -> ReviewResult | ReviewProcessingError:
        try:
            return analyze_review(record, lexicon, dictionary, scorer)
        except ReviewProcessingError as exc:
            return exc

    if workers > 1 and scorer.descriptor.reentrant:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, records))
    else:
        results = [one(r) for r in records]
    rows = [r.row for r in results if isinstance(r, ReviewResult)]
    failures = [r for r in results if isinstance(r, ReviewProcessingError)]
    rows.sort(key=lambda r: r.review_id)
    failures.sort(key=lambda e: e.review_id)
    return rows, failures


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _resolve_dictionary(config: PipelineConfig, lexicon: AspectLexicon) -> SpellDictionary:
    if config.dictionary_path:
        return SpellDictionary.from_file(config.dictionary_path).with_tokens(sorted(lexicon.surface_tokens()))
    return default_dictionary(lexicon)


def _check_output_dir(path: Path) -> None:
    path.mkdir(parents=True, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"output directory {str(path)!r} is not writable")


def run(config: PipelineConfig, scorer: Scorer | None = None) -> RunManifest:
    """Execute the pipeline and write its artifacts into ``config.output_dir``.

    ``scorer`` overrides ``config.scorer_name`` (used to inject stubs).
    Reviews that raise are skipped and listed in the manifest; an
    unavailable scorer aborts the run and removes anything it wrote.
    """
    started = time.perf_counter()
    out = Path(config.output_dir)
    owns_scorer = scorer is None
    if scorer is None:
        scorer = resolve_scorer(config.scorer_name, timeout=config.scorer_timeout)
    _check_output_dir(out)

    corpus = load_reviews(config.input_path, config.input_format)
    corpus_counts = corpus.counts_by_airport()
    if config.airport_filter is not None:
        corpus = corpus.filter_airports(config.airport_filter)
    lexicon = load_lexicon(config.lexicon_source)
    dictionary = _resolve_dictionary(config, lexicon)

    try:
        rows, failures = analyze_corpus(corpus.records, lexicon, dictionary, scorer, config.workers)
    finally:
        if owns_scorer and hasattr(scorer, "close"):
            scorer.close()
    for failure in failures:
        log.warning("skipped %s", failure)

    airports = sorted(corpus.airport_codes | set(config.airport_filter or ()))
    summaries = summarize_by_airport(rows, airports)
    metadata = {
        "n_reviews": len(corpus),
        "n_rows": len(rows),
        "n_failed_reviews": len(failures),
        "empty_text_reviews": corpus.n_empty_text,
        "empty_text_policy": "retained; an empty review yields an all-absent row",
        "row_value": "mean of signed mention values per aspect within a review",
    }
    payloads: list[tuple[str, bytes]] = [
        (MATRIX_FILE, matrix_rows_to_csv(rows).encode("utf-8")),
        (SUMMARY_CSV, summaries_to_csv(summaries).encode("utf-8")),
        (SUMMARY_JSON, summaries_to_json(summaries, metadata).encode("utf-8")),
    ]
    if config.evaluation_enabled:
        report = compute_accuracy(rows, corpus, threshold=config.positive_threshold)
        payloads.append((EVALUATION_JSON, report.to_json().encode("utf-8")))
        payloads.append((EVALUATION_TXT, render(report, RenderSpec("evaluation"))[0]))

    written: list[Path] = []
    try:
        artifacts = []
        for name, data in payloads:
            path = out / name
            path.write_bytes(data)
            written.append(path)
            artifacts.append({"path": name, "sha256": hashlib.sha256(data).hexdigest(), "bytes": len(data)})
        manifest = RunManifest(
            config=config.to_dict(),
            corpus_counts=corpus_counts,
            analyzed_counts=corpus.counts_by_airport(),
            n_empty_text=corpus.n_empty_text,
            lexicon_term_count=len(lexicon),
            scorer=scorer.descriptor.to_dict(),
            duration_s=round(time.perf_counter() - started, 6),
            artifacts=artifacts,
            failures=[f.to_dict() for f in failures],
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        manifest_path = out / MANIFEST_FILE
        manifest_path.write_text(json.dumps(manifest.to_dict(), indent=2) + "\n", encoding="utf-8")
        written.append(manifest_path)
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return manifest


def verify_manifest(path: str | Path) -> dict[str, Any]:
    """Re-hash every artifact listed in a manifest; raise on any difference.

    ``path`` may be the manifest file or the run's output directory.
    """
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_FILE
    doc = json.loads(path.read_text(encoding="utf-8"))
    for item in doc["artifacts"]:
        target = path.parent / item["path"]
        if not target.exists():
            raise ManifestMismatch(str(target), "artifact missing")
        if _sha256(target) != item["sha256"]:
            raise ManifestMismatch(str(target), "content hash differs from manifest")
    return doc

