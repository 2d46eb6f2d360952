"""Aspect-based sentiment analysis of airport traveller reviews.

Reviews are split into sentences, spell-corrected, searched for terms of
eight airport-service aspects, and each mention is scored for polarity.
The result is one row per review of per-aspect signed sentiment values,
with per-airport summaries and a star-rating-based accuracy check.
"""

__version__ = "0.1.0"

from .aggregate import AirportAspectSummary, AspectMatrixRow, build_row, summarize
from .corpus import Corpus, ReviewRecord, load_reviews, scrub_fields
from .evaluate import EvaluationReport, PolarityLabel, compute_accuracy, rating_to_label, review_polarity
from .lexicon import MATRIX_ORDER, Aspect, AspectLexicon, AspectMention, find_mentions, load_lexicon
from .pipeline import PipelineConfig, RunManifest, run, verify_manifest
from .preprocess import Sentence, SpellDictionary, correct_spelling, default_dictionary, segment_sentences
from .report import RenderSpec, render
from .scoring import (
    FixedScorer,
    HttpScorer,
    OracleScorer,
    PolarityScore,
    ScoredMention,
    ScorerDescriptor,
    StdioScorer,
    oracle_score,
    resolve_scorer,
    signed_value,
)

__all__ = [
    "AirportAspectSummary", "Aspect", "AspectLexicon", "AspectMatrixRow", "AspectMention",
    "Corpus", "EvaluationReport", "FixedScorer", "HttpScorer", "MATRIX_ORDER", "OracleScorer",
    "PipelineConfig", "PolarityLabel", "PolarityScore", "RenderSpec", "ReviewRecord", "RunManifest",
    "ScoredMention", "ScorerDescriptor", "Sentence", "SpellDictionary", "StdioScorer",
    "build_row", "compute_accuracy", "correct_spelling", "default_dictionary", "find_mentions",
    "load_lexicon", "load_reviews", "oracle_score", "rating_to_label", "render", "resolve_scorer",
    "review_polarity", "run", "scrub_fields", "segment_sentences", "signed_value", "summarize",
    "verify_manifest",
]
