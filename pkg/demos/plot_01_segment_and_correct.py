"""
Splitting reviews and fixing typos
==================================

Reviews arrive as free text with missing punctuation and misspellings.
They are cut into sentences first, then each token is checked against a
frequency dictionary.
"""

from airport_absa.preprocess import SpellDictionary, default_dictionary, preprocess_review, segment_sentences

text = "Securty line was long!! staff were rude\nToilets clean. Gate 3.5 is far away"

# Terminal punctuation followed by whitespace ends a sentence, and so does a newline.
# "3.5" stays intact because the dot is not followed by a space.
for s in segment_sentences(text, "r1"):
    print(s.index, repr(s.raw_text))

# %%
# The bundled dictionary holds about 49k common English words plus every
# lexicon token.  Unknown tokens become the closest entry, with the more
# frequent word winning among equally close ones.
dictionary = default_dictionary()
for s in preprocess_review(text, "r1", dictionary):
    print(f"{s.raw_text!r:45} -> {s.corrected_text!r}")

# %%
# Tokens with digits, e-mail addresses and URLs are never touched.
small = SpellDictionary({"gate": 10, "at": 50, "closed": 5})
print(preprocess_review("gte B12 closd at 6pm, see http://x.io", "r2", small)[0].corrected_text)
