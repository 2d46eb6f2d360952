"""Regenerate the bundled English frequency list.

Run once by maintainers; the package itself never imports wordfreq.

    pip install wordfreq
    python tools/build_wordlist.py > src/airport_absa/data/english_words.tsv
"""
import re
import sys

import wordfreq

N_WORDS = 50_000
SCALE = 1e9
WORD = re.compile(r"[a-z]+(?:['-][a-z]+)*")


def main():
    seen = set()
    for word in wordfreq.top_n_list("en", N_WORDS):
        if not WORD.fullmatch(word) or word in seen:
            continue
        seen.add(word)
        freq = max(1, round(wordfreq.word_frequency(word, "en") * SCALE))
        sys.stdout.write(f"{word}\t{freq}\n")


if __name__ == "__main__":
    main()
