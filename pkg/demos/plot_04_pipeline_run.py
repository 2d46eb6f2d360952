"""
Running the whole pipeline on a review file
===========================================

``run`` reads a CSV or JSONL file, writes the matrix, per-airport
summaries and a manifest with content hashes, and returns the manifest.
The bundled lexicon-window scorer is used, so no model download is needed.
"""

import json
import tempfile
from pathlib import Path

from airport_absa.pipeline import PipelineConfig, run, verify_manifest
from airport_absa.aggregate import read_matrix_csv, summarize_by_airport
from airport_absa.report import RenderSpec, render

here = Path(__file__).resolve().parent if "__file__" in globals() else Path.cwd()
out = Path(tempfile.mkdtemp(prefix="absa-"))

manifest = run(PipelineConfig(input_path=str(here / "data" / "sample_reviews.csv"), output_dir=str(out)))
print(json.dumps({k: manifest.to_dict()[k] for k in ("corpus_counts", "n_empty_text", "artifacts")}, indent=1))

# %%
# Every artifact can be re-hashed later to prove it was not edited.
verify_manifest(out)

rows = read_matrix_csv(out / "matrix.csv")
print(render(rows, RenderSpec("matrix", sort_key="count"))[0].decode())

# %%
# A grouped bar chart of the mean signed value per service and airport.
png, name = render(summarize_by_airport(rows), RenderSpec("summary", "bar-chart-image"))
(out / name).write_bytes(png)
print("chart written to", out / name)
