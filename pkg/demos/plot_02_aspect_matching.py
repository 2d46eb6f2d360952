"""
Finding service aspects in a sentence
=====================================

Eight airport services are detected through a term lexicon.  Matching is
case-insensitive, respects token boundaries, prefers the longest term and
treats ``check in``, ``check-in`` and ``Check - In`` alike.
"""

import json

from airport_absa.lexicon import Aspect, AspectLexicon, builtin_lexicon, find_mentions
from airport_absa.preprocess import Sentence

lexicon = builtin_lexicon()
print({a.value: len(lexicon.surfaces(a)) for a in Aspect})


def show(text, lx=lexicon):
    for m in find_mentions(Sentence("demo", 0, text), lx):
        print(f"  {text[m.span[0]:m.span[1]]!r:22} {m.aspect.value:11} via {m.matched_term!r}")


show("The Check - In desk opened late and passport control was slow")
show("Free WiFi but the toilets near gate 12 were dirty")
show("online booking was easy")  # "line" inside "online" is not a hit

# %%
# Custom lexicons are JSON documents with one non-empty list per aspect.
doc = lexicon.to_dict()
doc["facilities"] = doc["facilities"] + ["prayer room", "charging points"]
custom = AspectLexicon(doc)
show("Found charging points next to the prayer rooms", custom)
print(json.dumps({k: v[:3] for k, v in doc.items()}, indent=1))
