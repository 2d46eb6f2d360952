"""The eight airport-service aspects and the term matcher that finds them.

Surfaces are compared as token tuples, so ``check-in``, ``check in`` and
``Check - In`` are the same term.  Matching is greedy left to right with the
longest surface winning at each position; a trailing ``s`` on the final
text token also matches a singular entry (``gates`` -> ``gate``).
"""

from __future__ import annotations

import enum
import functools
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import DuplicateTerm, EmptyAspect, InvalidTerm, UnknownAspectName
from .preprocess import Sentence

MAX_TERM_TOKENS = 4

_TOKEN = re.compile(r"[^\W_]+")
_JOINER = re.compile(r"[\s\-‐‑–]+")


class Aspect(str, enum.Enum):
    ACCESS = "access"
    SECURITY = "security"
    CHECK_IN = "check_in"
    FACILITIES = "facilities"
    WAYFINDING = "wayfinding"
    ARRIVAL = "arrival"
    STAFF = "staff"
    TERMINAL = "terminal"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Aspect":
        key = re.sub(r"[\s\-]+", "_", name.strip().lower())
        try:
            return cls(key)
        except ValueError:
            raise UnknownAspectName(name) from None


# column order of the output matrix
MATRIX_ORDER: tuple[Aspect, ...] = (
    Aspect.FACILITIES,
    Aspect.TERMINAL,
    Aspect.ACCESS,
    Aspect.SECURITY,
    Aspect.CHECK_IN,
    Aspect.WAYFINDING,
    Aspect.ARRIVAL,
    Aspect.STAFF,
)


def surface_key(surface: str) -> tuple[str, ...]:
    return tuple(t.lower() for t in _TOKEN.findall(surface))


@dataclass(frozen=True)
class AspectTerm:
    surface: str
    aspect: Aspect


@dataclass(frozen=True)
class AspectMention:
    review_id: str
    sentence_index: int
    aspect: Aspect
    matched_term: str
    span: tuple[int, int]

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.sentence_index, self.span[0], self.span[1])


class AspectLexicon:
    """Validated aspect -> terms mapping with a token-tuple index."""

    def __init__(self, terms: Mapping[str | Aspect, Iterable[str]]) -> None:
        by_aspect: dict[Aspect, list[str]] = {a: [] for a in Aspect}
        index: dict[tuple[str, ...], AspectTerm] = {}
        for name, surfaces in terms.items():
            aspect = name if isinstance(name, Aspect) else Aspect.parse(name)
            if isinstance(surfaces, str):
                raise InvalidTerm(surfaces, f"terms of {aspect.value!r} must be a list")
            for raw in surfaces:
                if not isinstance(raw, str):
                    raise InvalidTerm(repr(raw), "term is not a string")
                surface = " ".join(raw.split()).lower()
                key = surface_key(surface)
                if not key:
                    raise InvalidTerm(raw, "no word characters")
                if len(key) > MAX_TERM_TOKENS:
                    raise InvalidTerm(raw, f"more than {MAX_TERM_TOKENS} tokens")
                known = index.get(key)
                if known is not None:
                    if known.aspect is not aspect:
                        raise DuplicateTerm(surface, known.aspect.value, aspect.value)
                    continue  # spelling variant of a term already present
                index[key] = AspectTerm(surface, aspect)
                by_aspect[aspect].append(surface)
        for aspect in Aspect:
            if not by_aspect[aspect]:
                raise EmptyAspect(aspect.value)
        self._index = index
        self._by_aspect = {a: tuple(v) for a, v in by_aspect.items()}
        self.max_tokens = max(len(k) for k in index)

    @property
    def terms(self) -> frozenset[AspectTerm]:
        return frozenset(self._index.values())

    def __len__(self) -> int:
        return len(self._index)

    def __iter__(self) -> Iterator[AspectTerm]:
        return iter(self._index.values())

    def surfaces(self, aspect: Aspect | str) -> tuple[str, ...]:
        aspect = aspect if isinstance(aspect, Aspect) else Aspect.parse(aspect)
        return self._by_aspect[aspect]

    def lookup(self, surface: str) -> Aspect | None:
        term = self._index.get(surface_key(surface))
        return term.aspect if term else None

    def term_for_key(self, key: tuple[str, ...]) -> AspectTerm | None:
        return self._index.get(key)

    def surface_tokens(self) -> set[str]:
        """Every token a spell dictionary needs so that lexicon terms survive correction."""
        out: set[str] = set()
        for surfaces in self._by_aspect.values():
            for surface in surfaces:
                for chunk in surface.split():
                    out.add(chunk)
                    out.update(surface_key(chunk))
        return {t for t in out if t[0].isalnum() and t[-1].isalnum()}

    def to_dict(self) -> dict[str, list[str]]:
        return {a.value: list(self._by_aspect[a]) for a in Aspect}


def load_lexicon(source: str | Path = "builtin") -> AspectLexicon:
    """``"builtin"`` or a path to a JSON document ``{aspect: [terms...]}``."""
    if str(source) == "builtin":
        return builtin_lexicon()
    with open(source, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise InvalidTerm(str(source), "lexicon document must be a JSON object")
    return AspectLexicon(doc)


@functools.lru_cache(maxsize=1)
def builtin_lexicon() -> AspectLexicon:
    text = resources.files("airport_absa").joinpath("data/lexicon.json").read_text("utf-8")
    return AspectLexicon(json.loads(text))


def _match_at(
    tokens: list[re.Match], text: str, i: int, lexicon: AspectLexicon
) -> tuple[AspectTerm, int] | None:
    longest = min(lexicon.max_tokens, len(tokens) - i)
    for n in range(longest, 0, -1):
        window = tokens[i:i + n]
        if any(not _JOINER.fullmatch(text[a.end():b.start()]) for a, b in zip(window, window[1:])):
            continue
        key = tuple(m.group().lower() for m in window)
        term = lexicon.term_for_key(key)
        if term is None and len(key[-1]) > 1 and key[-1].endswith("s"):
            term = lexicon.term_for_key(key[:-1] + (key[-1][:-1],))
        if term is not None:
            return term, n
    return None


def find_mentions(sentence: Sentence, lexicon: AspectLexicon) -> list[AspectMention]:
    """Lexicon hits in ``sentence.corrected_text``, ordered by span.

    A hit must start and end on token boundaries, and the tokens of a
    multi-word term may be separated only by whitespace or hyphens.
    """
    text = sentence.corrected_text
    tokens = list(_TOKEN.finditer(text))
    mentions = []
    i = 0
    while i < len(tokens):
        hit = _match_at(tokens, text, i, lexicon)
        if hit is None:
            i += 1
            continue
        term, n = hit
        span = (tokens[i].start(), tokens[i + n - 1].end())
        mentions.append(
            AspectMention(sentence.review_id, sentence.index, term.aspect, term.surface, span)
        )
        i += n
    return mentions
