import json

import pytest

from airport_absa.errors import DuplicateTerm, EmptyAspect, InvalidTerm, UnknownAspectName
from airport_absa.lexicon import (
    MATRIX_ORDER,
    Aspect,
    AspectLexicon,
    builtin_lexicon,
    find_mentions,
    load_lexicon,
    surface_key,
)
from airport_absa.preprocess import Sentence

MINIMUM_BUILTIN = {
    "facilities": ["facilities", "food", "seats", "toilet", "toilets", "wifi", "restaurants", "atm",
                   "shops", "amenities", "lounge", "shuttle"],
    "access": ["access", "transportation", "parking", "trolleys", "baggage", "taxi"],
    "check_in": ["check-in", "check in", "checkin", "queue", "line"],
    "security": ["security", "inspection"],
    "wayfinding": ["wayfinding", "signs", "signage", "screens"],
    "terminal": ["terminal", "terminals", "gate", "gates", "clean", "cleanliness", "ambience"],
    "staff": ["staff", "personnel", "crew"],
    "arrival": ["arrival", "immigration", "passport"],
}


def one_word_per_aspect(**overrides):
    doc = {a.value: [a.value.replace("_", "-")] for a in Aspect}
    doc.update(overrides)
    return doc


def sent(text, review_id="r", index=0):
    return Sentence(review_id, index, text, text)


def hits(text, lexicon):
    return [(m.aspect.value, m.matched_term, text[m.span[0]:m.span[1]]) for m in find_mentions(sent(text), lexicon)]


def test_aspect_set_and_order():
    assert [a.value for a in Aspect] == [
        "access", "security", "check_in", "facilities", "wayfinding", "arrival", "staff", "terminal",
    ]
    assert set(MATRIX_ORDER) == set(Aspect)
    assert Aspect.parse("Check-in") is Aspect.CHECK_IN
    assert Aspect.parse("Wayfinding") is Aspect.WAYFINDING
    with pytest.raises(UnknownAspectName):
        Aspect.parse("environment")


def test_builtin_contains_minimum_terms():
    lx = builtin_lexicon()
    for aspect, terms in MINIMUM_BUILTIN.items():
        for term in terms:
            assert lx.lookup(term) is Aspect(aspect), term
    assert lx.lookup("wifi") is Aspect.FACILITIES
    for a in Aspect:
        assert len(lx.surfaces(a)) >= 1


def test_duplicate_term_rejected():
    doc = one_word_per_aspect(facilities=["wifi"], terminal=["terminal", "wifi"])
    with pytest.raises(DuplicateTerm) as info:
        AspectLexicon(doc)
    assert info.value.term == "wifi"
    assert set(info.value.aspects) == {"facilities", "terminal"}


def test_hyphen_variant_counts_as_duplicate_across_aspects():
    doc = one_word_per_aspect(check_in=["check-in"], security=["check in"])
    with pytest.raises(DuplicateTerm):
        AspectLexicon(doc)


def test_missing_aspect_rejected(tmp_path):
    doc = one_word_per_aspect()
    del doc["arrival"]
    path = tmp_path / "lx.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(EmptyAspect) as info:
        load_lexicon(path)
    assert info.value.aspect == "arrival"
    with pytest.raises(EmptyAspect):
        AspectLexicon(one_word_per_aspect(arrival=[]))


def test_unknown_aspect_and_bad_terms():
    with pytest.raises(UnknownAspectName):
        AspectLexicon({**one_word_per_aspect(), "environment": ["clean"]})
    with pytest.raises(InvalidTerm):
        AspectLexicon(one_word_per_aspect(staff=["--"]))
    with pytest.raises(InvalidTerm):
        AspectLexicon(one_word_per_aspect(staff=["a b c d e"]))
    with pytest.raises(InvalidTerm):
        AspectLexicon(one_word_per_aspect(staff="staff"))


def test_load_builtin_and_file_round_trip(tmp_path):
    lx = load_lexicon("builtin")
    path = tmp_path / "lx.json"
    path.write_text(json.dumps(lx.to_dict()), encoding="utf-8")
    again = load_lexicon(path)
    assert again.terms == lx.terms


# --- matching ---------------------------------------------------------------

def test_documented_examples():
    lx = builtin_lexicon()
    assert hits("toilets are decent", lx) == [("facilities", "toilets", "toilets")]
    assert hits("the wifi signal is really slow", lx) == [("facilities", "wifi", "wifi")]
    assert hits("lovely day outside", lx) == []


def test_check_in_variants_normalize():
    lx = builtin_lexicon()
    for text in ("the check-in was slow", "the check in was slow", "the Check - In was slow", "the CHECK IN was slow"):
        found = find_mentions(sent(text), lx)
        assert [(m.aspect, m.matched_term) for m in found] == [(Aspect.CHECK_IN, "check-in")], text


def test_token_boundaries():
    lx = AspectLexicon(one_word_per_aspect(access=["ass"]))
    assert hits("first class lounge", lx) == []
    assert hits("ass", lx) == [("access", "ass", "ass")]
    lx = builtin_lexicon()
    assert hits("online booking", lx) == []  # "line" inside a word


def test_plural_matches_singular_entry():
    lx = AspectLexicon(one_word_per_aspect(terminal=["gate"]))
    assert hits("two gates closed", lx) == [("terminal", "gate", "gates")]
    lx = builtin_lexicon()
    assert hits("many shuttles", lx) == [("facilities", "shuttle", "shuttles")]


def test_longest_match_wins():
    lx = AspectLexicon(one_word_per_aspect(check_in=["check", "check in"], arrival=["in"]))
    assert hits("check in was quick", lx) == [("check_in", "check in", "check in")]
    assert hits("check the bags in", lx) == [("check_in", "check", "check"), ("arrival", "in", "in")]


def test_multiword_not_split_by_punctuation():
    lx = builtin_lexicon()
    assert [m[0] for m in hits("passport control was slow", lx)] == ["arrival"]
    assert hits("passport control was slow", lx)[0][1] == "passport control"
    assert [m[1] for m in hits("passport, control", lx)] == ["passport"]


def test_mentions_ordered_and_disjoint():
    lx = builtin_lexicon()
    text = "Staff at the gate and security were rude, the food and wifi poor"
    found = find_mentions(sent(text), lx)
    spans = [m.span for m in found]
    assert spans == sorted(spans)
    assert all(a[1] <= b[0] for a, b in zip(spans, spans[1:]))
    for m in found:
        key = surface_key(text[m.span[0]:m.span[1]])
        term_key = surface_key(m.matched_term)
        assert key == term_key or key[:-1] + (key[-1][:-1],) == term_key


def test_mentions_carry_sentence_identity():
    lx = builtin_lexicon()
    m = find_mentions(Sentence("rev7", 3, "x", "the lounge"), lx)[0]
    assert (m.review_id, m.sentence_index) == ("rev7", 3)
