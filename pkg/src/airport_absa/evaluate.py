"""Rating-derived accuracy of review-level polarity predictions.

Gold labels come from star ratings (3 and above is positive).  The
prediction for a review is derived from its aspect matrix row by a
swappable policy; the default takes the sign of the sum of the present
aspect values.  Reviews with no aspect mention are skipped and counted.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable

from .aggregate import AspectMatrixRow
from .corpus import Corpus
from .errors import RatingOutOfRange, UnknownReviewId

POSITIVE_THRESHOLD = 3


class PolarityLabel(str, enum.Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"

    def __str__(self) -> str:
        return self.value

    def flipped(self) -> "PolarityLabel":
        return PolarityLabel.NEGATIVE if self is PolarityLabel.POSITIVE else PolarityLabel.POSITIVE


def rating_to_label(rating: int, threshold: int = POSITIVE_THRESHOLD) -> PolarityLabel:
    if isinstance(rating, bool) or not isinstance(rating, int) or not 1 <= rating <= 5:
        raise RatingOutOfRange(rating)
    return PolarityLabel.POSITIVE if rating >= threshold else PolarityLabel.NEGATIVE


Policy = Callable[[AspectMatrixRow], "PolarityLabel | None"]


def review_polarity(row: AspectMatrixRow) -> PolarityLabel | None:
    if not row.any_present:
        return None
    total = sum((Fraction(v) for a, v in row.values.items() if row.present[a]), Fraction(0))
    return PolarityLabel.NEGATIVE if total < 0 else PolarityLabel.POSITIVE


review_polarity.description = (  # type: ignore[attr-defined]
    "sign of the sum of present aspect values; sum == 0 -> positive; "
    "reviews with no aspect present are skipped"
)


@dataclass(frozen=True)
class EvaluationReport:
    n_total: int
    n_evaluated: int
    n_skipped_no_aspects: int
    accuracy: float | None
    tp: int
    fp: int
    tn: int
    fn: int
    policy: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_total": self.n_total,
            "n_evaluated": self.n_evaluated,
            "n_skipped_no_aspects": self.n_skipped_no_aspects,
            "accuracy": self.accuracy,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
            "policy": self.policy,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def compute_accuracy(
    rows: Iterable[AspectMatrixRow],
    corpus: Corpus,
    policy: Policy = review_polarity,
    threshold: int = POSITIVE_THRESHOLD,
) -> EvaluationReport:
    """Pair each row's predicted polarity with its rating-derived label.

    ``positive`` is the positive class of the confusion counts.  With no
    evaluable row, ``accuracy`` is ``None``.
    """
    tp = fp = tn = fn = skipped = total = 0
    for row in rows:
        record = corpus.get(row.review_id)
        if record is None:
            raise UnknownReviewId(row.review_id)
        total += 1
        predicted = policy(row)
        if predicted is None:
            skipped += 1
            continue
        gold = rating_to_label(record.rating, threshold)
        if predicted is PolarityLabel.POSITIVE:
            if gold is PolarityLabel.POSITIVE:
                tp += 1
            else:
                fp += 1
        elif gold is PolarityLabel.NEGATIVE:
            tn += 1
        else:
            fn += 1
    evaluated = tp + fp + tn + fn
    description = getattr(policy, "description", getattr(policy, "__name__", repr(policy)))
    if threshold != POSITIVE_THRESHOLD:
        description += f"; gold positive when rating >= {threshold}"
    return EvaluationReport(
        n_total=total,
        n_evaluated=evaluated,
        n_skipped_no_aspects=skipped,
        accuracy=(tp + tn) / evaluated if evaluated else None,
        tp=tp, fp=fp, tn=tn, fn=fn,
        policy=description,
    )
