"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations

from typing import Any


class AbsaError(Exception):
    """Base class; ``details`` carries the machine-readable context."""

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        out = {"error": type(self).__name__, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


# corpus ---------------------------------------------------------------------

class CorpusError(AbsaError):
    pass


class MalformedRow(CorpusError):
    def __init__(self, reason: str, row: int | None = None) -> None:
        where = f"row {row}: " if row is not None else ""
        super().__init__(f"{where}{reason}", row=row, reason=reason)
        self.row = row
        self.reason = reason


class RatingOutOfRange(CorpusError):
    def __init__(self, value: Any, row: int | None = None) -> None:
        where = f"row {row}: " if row is not None else ""
        super().__init__(f"{where}rating {value!r} outside 1..5", row=row, value=value)
        self.value = value
        self.row = row


class DuplicateReviewId(CorpusError):
    def __init__(self, review_id: str, row: int | None = None) -> None:
        super().__init__(f"duplicate review_id {review_id!r}", review_id=review_id, row=row)
        self.review_id = review_id
        self.row = row


class MissingRequiredField(CorpusError):
    def __init__(self, field: str, row: int | None = None) -> None:
        super().__init__(f"missing required field {field!r}", field=field, row=row)
        self.field = field
        self.row = row


# lexicon --------------------------------------------------------------------

class LexiconError(AbsaError):
    pass


class DuplicateTerm(LexiconError):
    def __init__(self, term: str, first: str, second: str) -> None:
        super().__init__(
            f"term {term!r} assigned to both {first!r} and {second!r}",
            term=term, aspects=[first, second],
        )
        self.term = term
        self.aspects = (first, second)


class UnknownAspectName(LexiconError):
    def __init__(self, name: str) -> None:
        super().__init__(f"unknown aspect {name!r}", name=name)
        self.name = name


class EmptyAspect(LexiconError):
    def __init__(self, aspect: str) -> None:
        super().__init__(f"aspect {aspect!r} has no terms", aspect=aspect)
        self.aspect = aspect


class InvalidTerm(LexiconError):
    def __init__(self, term: str, reason: str) -> None:
        super().__init__(f"invalid term {term!r}: {reason}", term=term, reason=reason)
        self.term = term


# scoring --------------------------------------------------------------------

class ScorerUnavailable(AbsaError):
    """The scoring backend could not produce a score (unreachable, timeout, bad reply)."""


class UnknownScorer(AbsaError):
    def __init__(self, name: str) -> None:
        super().__init__(f"no scorer registered as {name!r}", name=name)
        self.name = name


# aggregate / evaluate -------------------------------------------------------

class MentionReviewMismatch(AbsaError):
    def __init__(self, expected: str, found: str) -> None:
        super().__init__(
            f"mention belongs to review {found!r}, not {expected!r}",
            expected=expected, found=found,
        )


class AirportMismatch(AbsaError):
    def __init__(self, expected: str, found: str, review_id: str) -> None:
        super().__init__(
            f"row {review_id!r} is from {found!r}, not {expected!r}",
            expected=expected, found=found, review_id=review_id,
        )


class UnknownReviewId(AbsaError):
    def __init__(self, review_id: str) -> None:
        super().__init__(f"review_id {review_id!r} not in corpus", review_id=review_id)
        self.review_id = review_id


# pipeline / report ----------------------------------------------------------

class ReviewProcessingError(AbsaError):
    """Wraps a failure inside one review with its location."""

    def __init__(self, review_id: str, sentence_index: int | None, cause: BaseException) -> None:
        where = f"review {review_id!r}"
        if sentence_index is not None:
            where += f", sentence {sentence_index}"
        super().__init__(
            f"{where}: {type(cause).__name__}: {cause}",
            review_id=review_id, sentence_index=sentence_index, cause=type(cause).__name__,
        )
        self.review_id = review_id
        self.sentence_index = sentence_index
        self.cause = cause


class ManifestMismatch(AbsaError):
    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"{path}: {reason}", path=path, reason=reason)


class UnsupportedFormat(AbsaError):
    def __init__(self, target: str, fmt: str) -> None:
        super().__init__(f"format {fmt!r} not available for {target!r}", target=target, format=fmt)
