"""Sentence segmentation and dictionary-based spelling correction."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

# A run of terminators (plus closing quotes/brackets) ends a sentence only
# when followed by whitespace or end of text, so "3.5" and "e.g.x" stay whole.
_BOUNDARY = re.compile(r"""[.!?]+['")\]’”]*(?=\s|\Z)|[^\S\n]*\n\s*""")

_URL_MARKERS = ("@", "://")


@dataclass(frozen=True)
class Sentence:
    review_id: str
    index: int
    raw_text: str
    corrected_text: str = ""

    def __post_init__(self) -> None:
        if not self.corrected_text:
            object.__setattr__(self, "corrected_text", self.raw_text)


def segment_sentences(text: str, review_id: str = "") -> list[Sentence]:
    """Split ``text`` on ``.``/``!``/``?`` runs and on newline runs.

    Terminal punctuation stays with its sentence; a trailing fragment with no
    terminator is its own sentence.  Whitespace-only input gives ``[]``.
    """
    pieces = []
    pos = 0
    for m in _BOUNDARY.finditer(text):
        if m.group()[0] in ".!?":
            pieces.append(text[pos:m.end()])
        else:
            pieces.append(text[pos:m.start()])
        pos = m.end()
    pieces.append(text[pos:])
    chunks = [p.strip() for p in pieces if p.strip()]
    return [Sentence(review_id, i, chunk) for i, chunk in enumerate(chunks)]


# ---------------------------------------------------------------------------
# edit distance


def edit_distance(a: str, b: str, limit: int | None = None) -> int:
    """Optimal-string-alignment distance (Levenshtein plus adjacent swaps).

    With ``limit``, any distance above it is reported as ``limit + 1``,
    which lets the computation stop early.
    """
    if a == b:
        return 0
    # a shared prefix or suffix never changes the distance
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    a, b = a[k:], b[k:]
    k = 0
    while k < len(a) and k < len(b) and a[-1 - k] == b[-1 - k]:
        k += 1
    if k:
        a, b = a[:-k], b[:-k]
    la, lb = len(a), len(b)
    cap = None if limit is None else limit + 1
    if cap is not None and abs(la - lb) >= cap:
        return cap
    if not la or not lb:
        return la or lb
    prev2: list[int] = []
    prev = list(range(lb + 1))
    prev_min = 0
    for i in range(1, la + 1):
        cur = [i] + [0] * lb
        ca = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ca == b[j - 1] else 1
            v = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and ca == b[j - 2] and a[i - 2] == b[j - 1]:
                v = min(v, prev2[j - 2] + 1)
            cur[j] = v
        if cap is not None:
            # a row's minimum is at least min(previous row, the one before + 1)
            cur_min = min(cur)
            if cur_min >= cap and prev_min >= cap - 1:
                return cap
            prev_min = cur_min
        prev2, prev = prev, cur
    d = prev[lb]
    return d if cap is None else min(d, cap)


def _deletes(word: str, depth: int) -> set[str]:
    out = {word}
    frontier = {word}
    for _ in range(depth):
        nxt = set()
        for w in frontier:
            for i in range(len(w)):
                nxt.add(w[:i] + w[i + 1:])
        nxt -= out
        out |= nxt
        frontier = nxt
    return out


# ---------------------------------------------------------------------------
# dictionary


class SpellDictionary:
    """Token -> corpus-frequency table with an edit-distance candidate index.

    Candidates for an unknown token are every entry within
    ``max_edit_distance``; the winner is the closest entry, ties going to
    the higher frequency and then to lexicographic order.  Lookup
    uses a symmetric deletion index, which finds every entry within the
    distance bound (transpositions included) without scanning the table.
    """

    def __init__(self, entries: Mapping[str, int], max_edit_distance: int = 2) -> None:
        if not entries:
            raise ValueError("spell dictionary is empty")
        if max_edit_distance < 0:
            raise ValueError("max_edit_distance must be >= 0")
        clean: dict[str, int] = {}
        for token, freq in entries.items():
            if not token or token != token.lower():
                raise ValueError(f"dictionary entry {token!r} is not lowercase")
            if not (token[0].isalnum() and token[-1].isalnum()):
                raise ValueError(f"dictionary entry {token!r} must start and end alphanumeric")
            if any(ch.isspace() for ch in token):
                raise ValueError(f"dictionary entry {token!r} contains whitespace")
            if isinstance(freq, bool) or not isinstance(freq, int) or freq <= 0:
                raise ValueError(f"frequency of {token!r} must be a positive integer")
            clean[token] = freq
        self.entries: Mapping[str, int] = clean
        self.max_edit_distance = max_edit_distance
        self._index: dict[str, list[str]] | None = None

    def __contains__(self, token: object) -> bool:
        return token in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def frequency(self, token: str) -> int:
        return self.entries.get(token, 0)

    def with_tokens(self, tokens: Iterable[str], frequency: int = 1) -> "SpellDictionary":
        """Copy with ``tokens`` added (existing frequencies are kept)."""
        merged = dict(self.entries)
        added = False
        for tok in tokens:
            if tok not in merged:
                merged[tok] = frequency
                added = True
        if not added:
            return self
        return SpellDictionary(merged, self.max_edit_distance)

    def _build_index(self) -> dict[str, list[str]]:
        index: dict[str, list[str]] = {}
        for word in self.entries:
            for d in _deletes(word, self.max_edit_distance):
                bucket = index.get(d)
                if bucket is None:
                    index[d] = [word]
                else:
                    bucket.append(word)
        return index

    def candidates(self, token: str) -> list[tuple[str, int]]:
        """Entries within the distance bound as ``(word, distance)``, best first."""
        if self._index is None:
            self._index = self._build_index()
        found: dict[str, int] = {}
        for d in _deletes(token, self.max_edit_distance):
            for word in self._index.get(d, ()):
                if word in found or abs(len(word) - len(token)) > self.max_edit_distance:
                    continue
                dist = edit_distance(token, word, self.max_edit_distance)
                if dist <= self.max_edit_distance:
                    found[word] = dist
        ranked = sorted(found.items(), key=lambda kv: (kv[1], -self.entries[kv[0]], kv[0]))
        return ranked

    def best(self, token: str) -> str | None:
        # Every entry one edit away shares a depth-1 delete with the token, so
        # a hit there settles the answer without the full depth-2 search.
        if self._index is None:
            self._index = self._build_index()
        if self.max_edit_distance >= 1:
            near = {
                word
                for d in _deletes(token, 1)
                for word in self._index.get(d, ())
                if abs(len(word) - len(token)) <= 1 and edit_distance(token, word, 1) == 1
            }
            if near:
                return min(near, key=lambda w: (-self.entries[w], w))
        ranked = self.candidates(token)
        return ranked[0][0] if ranked else None

    @classmethod
    def from_file(cls, path: str | Path, max_edit_distance: int = 2) -> "SpellDictionary":
        """Read ``token<TAB>frequency`` lines (blank lines and ``#`` comments skipped)."""
        with open(path, encoding="utf-8") as fh:
            return cls(_parse_tsv(fh, str(path)), max_edit_distance)

    def to_file(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for token in sorted(self.entries):
                fh.write(f"{token}\t{self.entries[token]}\n")


def _parse_tsv(lines: Iterable[str], source: str) -> dict[str, int]:
    entries: dict[str, int] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{source}:{lineno}: expected 'token<TAB>frequency'")
        try:
            freq = int(parts[1])
        except ValueError:
            raise ValueError(f"{source}:{lineno}: bad frequency {parts[1]!r}") from None
        entries[parts[0]] = freq
    return entries


@functools.lru_cache(maxsize=1)
def _bundled_words() -> dict[str, int]:
    text = resources.files("airport_absa").joinpath("data/english_words.tsv").read_text("utf-8")
    return _parse_tsv(text.splitlines(), "english_words.tsv")


@functools.lru_cache(maxsize=8)
def _default_for(tokens: frozenset[str], max_edit_distance: int) -> SpellDictionary:
    return SpellDictionary(_bundled_words(), max_edit_distance).with_tokens(sorted(tokens))


def default_dictionary(lexicon=None, max_edit_distance: int = 2) -> SpellDictionary:
    """Bundled English frequency list plus every surface token of ``lexicon``.

    Lexicon tokens missing from the English list enter with frequency 1.
    ``lexicon`` defaults to the builtin aspect lexicon.
    """
    if lexicon is None:
        from .lexicon import builtin_lexicon

        lexicon = builtin_lexicon()
    return _default_for(frozenset(lexicon.surface_tokens()), max_edit_distance)


# ---------------------------------------------------------------------------
# correction


def _split_core(piece: str) -> tuple[str, str, str]:
    start = 0
    end = len(piece)
    while start < end and not piece[start].isalnum():
        start += 1
    while end > start and not piece[end - 1].isalnum():
        end -= 1
    return piece[:start], piece[start:end], piece[end:]


def is_exempt(token: str) -> bool:
    """Tokens with digits, ``@`` or ``://`` are never corrected."""
    return any(ch.isdigit() for ch in token) or any(m in token for m in _URL_MARKERS)


def correct_token(piece: str, dictionary: SpellDictionary) -> str:
    if is_exempt(piece):
        return piece
    lead, core, trail = _split_core(piece)
    if not core:
        return piece
    lowered = core.lower()
    if lowered in dictionary:
        return lead + lowered + trail
    best = dictionary.best(lowered)
    if best is None:
        return piece
    return lead + best + trail


def correct_text(text: str, dictionary: SpellDictionary) -> str:
    """Correct each whitespace-delimited token; separators are kept verbatim."""
    parts = re.split(r"(\s+)", text)
    return "".join(p if not p or p.isspace() else correct_token(p, dictionary) for p in parts)


def correct_spelling(sentence: Sentence, dictionary: SpellDictionary) -> Sentence:
    """Return ``sentence`` with ``corrected_text`` spell-corrected.

    In-dictionary tokens are lowercased, unknown tokens are replaced by the
    best candidate within the dictionary's distance bound, and tokens with
    no candidate (or exempt tokens) are left as they are.  Punctuation
    attached to a token is preserved, so the token count never changes.
    """
    return replace(sentence, corrected_text=correct_text(sentence.corrected_text, dictionary))


def preprocess_review(text: str, review_id: str, dictionary: SpellDictionary) -> list[Sentence]:
    return [correct_spelling(s, dictionary) for s in segment_sentences(text, review_id)]
