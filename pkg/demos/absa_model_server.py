"""Serve aspect polarity scores over stdin/stdout for the ``adapter:stdio:`` scorer.

Without arguments the bundled lexicon-window scorer answers.  With
``--model NAME`` a Hugging Face text-classification model that takes
(sentence, aspect) pairs is loaded instead, for example
``yangheng/deberta-v3-base-absa-v1.1``.
"""

import argparse

from airport_absa.scoring import OracleScorer, PolarityScore, ScorerDescriptor, serve_stdio


class PairClassifier:
    descriptor = ScorerDescriptor("hf-pair-classifier", reentrant=False, deterministic=True)

    def __init__(self, model: str) -> None:
        from transformers import pipeline

        self._clf = pipeline("text-classification", model=model, top_k=None)

    def score(self, sentence_text: str, aspect_term: str) -> PolarityScore:
        out = self._clf({"text": sentence_text, "text_pair": aspect_term})
        probs = {d["label"].lower(): float(d["score"]) for d in out}
        pos, neg = probs.get("positive", 0.0), probs.get("negative", 0.0)
        return PolarityScore(pos, neg, max(0.0, 1.0 - pos - neg))


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--model")
    args = parser.parse_args()
    serve_stdio(PairClassifier(args.model) if args.model else OracleScorer())
