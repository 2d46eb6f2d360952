"""
From scored mentions to an aspect matrix
========================================

Each mention gets a polarity score.  The signed value is the positive
probability when it wins and the negated negative probability otherwise.
A review's cell for an aspect is the mean over that aspect's mentions.
Here a canned scorer stands in for a model so the numbers are easy to
follow.
"""

from airport_absa.aggregate import summarize_by_airport
from airport_absa.corpus import ReviewRecord
from airport_absa.lexicon import builtin_lexicon
from airport_absa.pipeline import analyze_corpus
from airport_absa.preprocess import default_dictionary
from airport_absa.report import RenderSpec, render
from airport_absa.scoring import FixedScorer, PolarityScore

reviews = [
    ReviewRecord("a", "DXB", "The terminal is spotless. Seats were comfy, toilets fine and the shops good", 5),
    ReviewRecord("b", "DXB", "Wifi is weak and the food bland. The terminals themselves are lovely", 2),
]

scorer = FixedScorer(
    {
        "terminal": PolarityScore(0.98, 0.01, 0.01),
        "seats": PolarityScore(0.97, 0.02, 0.01),
        "toilets": PolarityScore(0.90, 0.05, 0.05),
        "shops": PolarityScore(0.95, 0.03, 0.02),
        "wifi": PolarityScore(0.04, 0.92, 0.04),
        "food": PolarityScore(0.08, 0.86, 0.06),
        "terminals": PolarityScore(0.99, 0.005, 0.005),
    }
)

rows, failures = analyze_corpus(reviews, builtin_lexicon(), default_dictionary(), scorer)
print(render(rows, RenderSpec("matrix"))[0].decode())

# %%
# facilities for review "a" is (0.97 + 0.90 + 0.95) / 3 = .94 and for "b"
# (-0.92 - 0.86) / 2 = -.89.  Aspects never mentioned stay 0 and are
# flagged absent, which keeps them out of the per-airport means below.
print(render(summarize_by_airport(rows), RenderSpec("summary"))[0].decode())
