"""
Plugging in an external scorer
==============================

Any process that reads ``{"sentence", "aspect_term"}`` JSON lines and
answers with ``{"positive", "negative", "neutral"}`` can score mentions.
``absa_model_server.py`` next to this file is such a process; pass it
``--model`` to put a transformer behind it.
"""

import shlex
import sys
import tempfile
from pathlib import Path

from airport_absa.pipeline import PipelineConfig, run
from airport_absa.scoring import oracle_score, resolve_scorer

here = Path(__file__).resolve().parent if "__file__" in globals() else Path.cwd()
command = shlex.join([sys.executable, str(here / "absa_model_server.py")])

with resolve_scorer("adapter:stdio:" + command, timeout=20) as remote:
    text = "the security staff were not friendly"
    print(remote.score(text, "staff"), "==", oracle_score(text, "staff"))

# %%
# The same spec string works as the pipeline's scorer name.  Stdio scorers
# are serialized, so ``workers`` has no effect with them.
out = Path(tempfile.mkdtemp(prefix="absa-ext-"))
manifest = run(PipelineConfig(str(here / "data" / "sample_reviews.csv"), str(out),
                              scorer_name="adapter:stdio:" + command))
print(manifest.scorer)
print((out / "matrix.csv").read_text().splitlines()[1])
