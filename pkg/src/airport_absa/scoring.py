"""Polarity scorers for (sentence, aspect term) pairs.

Any object with a ``descriptor`` attribute and a ``score(sentence_text,
aspect_term)`` method can drive the pipeline.  Bundled implementations:

* :class:`OracleScorer` -- deterministic opinion-word window rule, the
  offline stand-in for a pretrained aspect-sentiment model;
* :class:`FixedScorer` -- returns canned scores keyed by term (test stub);
* :class:`StdioScorer` / :class:`HttpScorer` -- adapters to an external
  scoring process speaking one JSON object per line / per request.

``serve_stdio`` is the server half of the stdio protocol, for wrapping any
Python scorer (e.g. a transformer model) as an external process.
"""

from __future__ import annotations

import functools
import json
import queue
import re
import shlex
import subprocess
import sys
import threading
import urllib.error
import urllib.request
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Callable, Mapping, Protocol, TextIO

from .errors import ScorerUnavailable, UnknownScorer
from .lexicon import AspectMention

SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class PolarityScore:
    positive: float
    negative: float
    neutral: float = 0.0

    def __post_init__(self) -> None:
        for name in ("positive", "negative", "neutral"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} probability {v!r} outside [0, 1]")
        total = self.positive + self.negative + self.neutral
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {total!r}, not 1")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "PolarityScore":
        return cls(
            float(data["positive"]),
            float(data["negative"]),
            float(data.get("neutral", 0.0)),
        )

    def to_dict(self) -> dict[str, float]:
        return {"positive": self.positive, "negative": self.negative, "neutral": self.neutral}

    @property
    def signed(self) -> float:
        return signed_value(self)


def signed_value(score: PolarityScore) -> float:
    """``+positive`` when positive >= negative, else ``-negative``.

    Neutral mass never decides the sign; an exact positive/negative tie is
    reported as positive.
    """
    if score.positive >= score.negative:
        return score.positive
    return -score.negative


@dataclass(frozen=True)
class ScoredMention:
    mention: AspectMention
    score: PolarityScore

    @property
    def signed(self) -> float:
        return signed_value(self.score)


@dataclass(frozen=True)
class ScorerDescriptor:
    name: str
    reentrant: bool
    deterministic: bool

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "reentrant": self.reentrant, "deterministic": self.deterministic}


class Scorer(Protocol):
    descriptor: ScorerDescriptor

    def score(self, sentence_text: str, aspect_term: str) -> PolarityScore: ...


# ---------------------------------------------------------------------------
# oracle scorer

WINDOW = 5
NEGATION_REACH = 2
NEGATORS = frozenset({"not", "no", "never"})

_WORD = re.compile(r"[^\W_]+")


@functools.lru_cache(maxsize=1)
def opinion_words() -> tuple[frozenset[str], frozenset[str]]:
    """Bundled ``(positive, negative)`` opinion word sets."""
    doc = json.loads(
        resources.files("airport_absa").joinpath("data/opinion_words.json").read_text("utf-8")
    )
    return frozenset(doc["positive"]), frozenset(doc["negative"])


def _locate(tokens: list[str], term: list[str]) -> int:
    k = len(term)
    for i in range(len(tokens) - k + 1):
        if tokens[i:i + k] == term:
            return i
    raise ValueError(f"aspect term {' '.join(term)!r} does not occur in sentence")


def opinion_counts(sentence_text: str, aspect_term: str) -> tuple[int, int]:
    """Positive and negative opinion-word hits around the first occurrence of the term."""
    positive, negative = opinion_words()
    tokens = [t.lower() for t in _WORD.findall(sentence_text)]
    term = [t.lower() for t in _WORD.findall(aspect_term)]
    if not term:
        raise ValueError("empty aspect term")
    start = _locate(tokens, term)
    stop = start + len(term)
    window = list(range(max(0, start - WINDOW), start)) + list(range(stop, min(len(tokens), stop + WINDOW)))
    p = n = 0
    for pos in window:
        word = tokens[pos]
        if word in positive:
            polarity = 1
        elif word in negative:
            polarity = -1
        else:
            continue
        if any(tokens[q] in NEGATORS for q in range(max(0, pos - NEGATION_REACH), pos)):
            polarity = -polarity
        if polarity > 0:
            p += 1
        else:
            n += 1
    return p, n


def oracle_from_counts(p: int, n: int) -> PolarityScore:
    """Exact rational formula, rounded once to float per component.

    mass     = (P + N) / (P + N + 1)
    positive = mass * (1 + P) / (2 + P + N)
    negative = mass * (1 + N) / (2 + P + N)
    neutral  = 1 - mass
    """
    mass = Fraction(p + n, p + n + 1)
    pos = mass * Fraction(1 + p, 2 + p + n)
    neg = mass * Fraction(1 + n, 2 + p + n)
    return PolarityScore(float(pos), float(neg), float(1 - mass))


def oracle_score(sentence_text: str, aspect_term: str) -> PolarityScore:
    """Score the term from opinion words within 5 tokens either side of it.

    Each opinion word preceded (within 2 tokens) by ``not``/``no``/``never``
    counts with its polarity flipped.  No opinion words means a fully
    neutral score.
    """
    return oracle_from_counts(*opinion_counts(sentence_text, aspect_term))


class OracleScorer:
    descriptor = ScorerDescriptor("oracle", reentrant=True, deterministic=True)

    def score(self, sentence_text: str, aspect_term: str) -> PolarityScore:
        return oracle_score(sentence_text, aspect_term)


class FixedScorer:
    """Canned scores looked up by lowercased aspect term, with an optional fallback."""

    def __init__(
        self,
        scores: Mapping[str, PolarityScore],
        default: PolarityScore | None = None,
        name: str = "fixed",
    ) -> None:
        self._scores = {k.lower(): v for k, v in scores.items()}
        self._default = default
        self.descriptor = ScorerDescriptor(name, reentrant=True, deterministic=True)

    def score(self, sentence_text: str, aspect_term: str) -> PolarityScore:
        try:
            return self._scores[aspect_term.lower()]
        except KeyError:
            if self._default is None:
                raise KeyError(f"no canned score for {aspect_term!r}") from None
            return self._default


# ---------------------------------------------------------------------------
# external adapters


def _parse_reply(payload: Any, source: str) -> PolarityScore:
    if not isinstance(payload, dict):
        raise ScorerUnavailable(f"{source}: reply is not a JSON object")
    if "error" in payload:
        raise ScorerUnavailable(f"{source}: backend error: {payload['error']}")
    try:
        return PolarityScore.from_mapping(payload)
    except (KeyError, TypeError, ValueError) as exc:
        raise ScorerUnavailable(f"{source}: invalid score reply: {exc}") from None


class StdioScorer:
    """Talk to a subprocess: one JSON request line in, one JSON reply line out.

    Request ``{"sentence": ..., "aspect_term": ...}``; reply
    ``{"positive": p, "negative": n, "neutral": u}``.  Calls are serialized
    on a lock, so the descriptor is non-reentrant.
    """

    def __init__(self, command: str | list[str], timeout: float = 30.0) -> None:
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        self.descriptor = ScorerDescriptor(
            "adapter:stdio:" + shlex.join(self.command), reentrant=False, deterministic=False
        )
        self._lock = threading.Lock()
        self._proc: subprocess.Popen | None = None
        self._lines: queue.Queue[str | None] = queue.Queue()

    def _start(self) -> subprocess.Popen:
        if self._proc is not None and self._proc.poll() is None:
            return self._proc
        try:
            proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                encoding="utf-8",
                bufsize=1,
            )
        except OSError as exc:
            raise ScorerUnavailable(f"cannot start scorer process: {exc}") from None
        self._lines = queue.Queue()
        threading.Thread(target=self._pump, args=(proc, self._lines), daemon=True).start()
        self._proc = proc
        return proc

    @staticmethod
    def _pump(proc: subprocess.Popen, lines: "queue.Queue[str | None]") -> None:
        assert proc.stdout is not None
        for line in proc.stdout:
            lines.put(line)
        lines.put(None)

    def score(self, sentence_text: str, aspect_term: str) -> PolarityScore:
        request = json.dumps({"sentence": sentence_text, "aspect_term": aspect_term}, ensure_ascii=False)
        with self._lock:
            proc = self._start()
            assert proc.stdin is not None
            try:
                proc.stdin.write(request + "\n")
                proc.stdin.flush()
            except (BrokenPipeError, OSError) as exc:
                raise ScorerUnavailable(f"scorer process not accepting input: {exc}") from None
            try:
                line = self._lines.get(timeout=self.timeout)
            except queue.Empty:
                self.close()
                raise ScorerUnavailable(f"scorer process timed out after {self.timeout}s") from None
            if line is None:
                raise ScorerUnavailable("scorer process exited")
            try:
                payload = json.loads(line)
            except json.JSONDecodeError:
                raise ScorerUnavailable(f"scorer process sent non-JSON: {line[:80]!r}") from None
            return _parse_reply(payload, "stdio scorer")

    def close(self) -> None:
        proc, self._proc = self._proc, None
        if proc is None:
            return
        if proc.stdin:
            try:
                proc.stdin.close()
            except OSError:
                pass
        try:
            proc.wait(timeout=2)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.wait()

    def __enter__(self) -> "StdioScorer":
        return self

    def __exit__(self, *exc: object) -> None:
        self.close()


class HttpScorer:
    """POST the JSON request to ``url``; any non-2xx status or timeout is ScorerUnavailable."""

    def __init__(self, url: str, timeout: float = 30.0) -> None:
        self.url = url
        self.timeout = timeout
        self.descriptor = ScorerDescriptor("adapter:" + url, reentrant=True, deterministic=False)

    def score(self, sentence_text: str, aspect_term: str) -> PolarityScore:
        body = json.dumps({"sentence": sentence_text, "aspect_term": aspect_term}).encode("utf-8")
        req = urllib.request.Request(
            self.url, data=body, headers={"Content-Type": "application/json"}, method="POST"
        )
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                status = resp.status
                raw = resp.read()
        except urllib.error.HTTPError as exc:
            raise ScorerUnavailable(f"{self.url}: HTTP {exc.code}") from None
        except (urllib.error.URLError, TimeoutError, OSError) as exc:
            raise ScorerUnavailable(f"{self.url}: {exc}") from None
        if not 200 <= status < 300:
            raise ScorerUnavailable(f"{self.url}: HTTP {status}")
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError:
            raise ScorerUnavailable(f"{self.url}: reply is not JSON") from None
        return _parse_reply(payload, self.url)


def serve_stdio(scorer: Scorer, stdin: TextIO | None = None, stdout: TextIO | None = None) -> None:
    """Answer stdio-protocol requests with ``scorer`` until stdin closes.

    A request that cannot be scored gets ``{"error": "..."}`` back so the
    client surfaces it as :class:`ScorerUnavailable`.
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    for line in stdin:
        if not line.strip():
            continue
        try:
            req = json.loads(line)
            reply: dict[str, Any] = scorer.score(req["sentence"], req["aspect_term"]).to_dict()
        except Exception as exc:  # reported to the client, never fatal to the server
            reply = {"error": f"{type(exc).__name__}: {exc}"}
        stdout.write(json.dumps(reply) + "\n")
        stdout.flush()


# ---------------------------------------------------------------------------
# registry

_REGISTRY: dict[str, Callable[[], Scorer]] = {"oracle": OracleScorer}


def register_scorer(name: str, factory: Callable[[], Scorer]) -> None:
    _REGISTRY[name] = factory


def registered_scorers() -> list[str]:
    return sorted(_REGISTRY)


def resolve_scorer(name: str, timeout: float = 30.0) -> Scorer:
    """Build a scorer from ``oracle``, a registered name, or ``adapter:SPEC``.

    ``SPEC`` is either an ``http(s)://`` URL or ``stdio:COMMAND``.
    """
    if name.startswith("adapter:"):
        spec = name[len("adapter:"):]
        if spec.startswith(("http://", "https://")):
            return HttpScorer(spec, timeout=timeout)
        if spec.startswith("stdio:"):
            return StdioScorer(spec[len("stdio:"):], timeout=timeout)
        raise UnknownScorer(name)
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise UnknownScorer(name) from None
