"""Seeded generator of synthetic airport reviews built from lexicon and opinion words."""

from __future__ import annotations

import csv
import random
import re

FILLER = (
    "the", "a", "was", "were", "is", "are", "very", "really", "quite", "and", "but", "at", "in",
    "of", "for", "our", "my", "we", "it", "there", "this", "that", "with", "airport", "flight",
    "time", "today", "again", "also", "so", "too", "overall", "experience", "travel", "place",
)
NEGATORS = ("not", "no", "never")
PUNCT = (".", "!", "?", "...", "")


def _corrupt(word: str, rng: random.Random) -> str:
    if len(word) < 5 or not word.isalpha():
        return word
    i = rng.randrange(1, len(word) - 1)
    kind = rng.choice(("del", "swap", "dup"))
    if kind == "del":
        return word[:i] + word[i + 1:]
    if kind == "swap":
        return word[:i] + word[i + 1] + word[i] + word[i + 2:]
    return word[:i] + word[i] + word[i:]


def make_reviews(
    n: int,
    lexicon: dict[str, list[str]],
    positive: list[str],
    negative: list[str],
    seed: int = 0,
    airports: tuple[str, ...] = ("DXB", "DOH"),
    misspell_rate: float = 0.0,
) -> list[dict]:
    rng = random.Random(seed)
    terms = sorted(t for ts in lexicon.values() for t in ts)
    reviews = []
    for k in range(n):
        sentences = []
        for _ in range(rng.randint(0, 4)):
            words = []
            for _ in range(rng.randint(2, 12)):
                roll = rng.random()
                if roll < 0.2:
                    term = rng.choice(terms)
                    if rng.random() < misspell_rate:
                        term = " ".join(_corrupt(w, rng) for w in term.split())
                    words.append(term)
                elif roll < 0.35:
                    words.append(rng.choice(positive))
                elif roll < 0.5:
                    words.append(rng.choice(negative))
                elif roll < 0.55:
                    words.append(rng.choice(NEGATORS))
                else:
                    words.append(rng.choice(FILLER))
                if rng.random() < 0.1:
                    words[-1] = words[-1] + ","
            if rng.random() < 0.3:
                words[0] = words[0].capitalize()
            if rng.random() < 0.05:
                words = [w.upper() for w in words]
            sentences.append(" ".join(words) + rng.choice(PUNCT))
        sep = rng.choice((" ", "\n", "  "))
        reviews.append({
            "review_id": f"s{k:04d}",
            "airport": rng.choice(airports),
            "text": sep.join(sentences),
            "rating": rng.randint(1, 5),
        })
    return reviews


def small_dictionary(
    lexicon: dict[str, list[str]], positive: list[str], negative: list[str], seed: int = 0
) -> dict[str, int]:
    """Filler, negators, opinion words and lexicon tokens with random frequencies."""
    rng = random.Random(seed)
    words = set(FILLER) | set(NEGATORS) | set(positive) | set(negative)
    for surfaces in lexicon.values():
        for surface in surfaces:
            for chunk in surface.split():
                words.add(chunk)
                words.update(re.findall(r"[^\W_]+", chunk))
    return {w: rng.randint(1, 1000) for w in sorted(words)}


def write_dictionary(entries: dict[str, int], path) -> None:
    path.write_text("".join(f"{w}\t{f}\n" for w, f in entries.items()), encoding="utf-8")


def write_reviews_csv(reviews: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["review_id", "airport", "text", "rating"])
        writer.writeheader()
        writer.writerows(reviews)
