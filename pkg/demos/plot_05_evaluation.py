"""
Checking predictions against star ratings
=========================================

Without hand labels, a review counts as positive when its rating is at
least 3.  The review-level prediction is the sign of the sum of its
present aspect values; reviews that mention no aspect are skipped and
counted separately.
"""

from pathlib import Path
import tempfile

from airport_absa.pipeline import PipelineConfig, run

here = Path(__file__).resolve().parent if "__file__" in globals() else Path.cwd()
out = Path(tempfile.mkdtemp(prefix="absa-eval-"))
run(PipelineConfig(str(here / "data" / "sample_reviews.csv"), str(out), evaluation_enabled=True))
print((out / "evaluation.txt").read_text())

# %%
# The threshold can be raised to treat three-star reviews as negative.
run(PipelineConfig(str(here / "data" / "sample_reviews.csv"), str(out), evaluation_enabled=True,
                   positive_threshold=4))
print((out / "evaluation.txt").read_text())
