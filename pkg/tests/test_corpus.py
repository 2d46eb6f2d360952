import json

import pytest
from hypothesis import given, settings, strategies as st

from airport_absa.corpus import Corpus, ReviewRecord, load_reviews, scrub_fields, write_reviews
from airport_absa.errors import DuplicateReviewId, MalformedRow, MissingRequiredField, RatingOutOfRange


def test_minimal_row(write_csv):
    corpus = load_reviews(write_csv(["r1,DXB,Clean terminal,5"]))
    assert len(corpus) == 1
    assert corpus.records[0] == ReviewRecord("r1", "DXB", "Clean terminal", 5)
    assert corpus.airport_codes == {"DXB"}


def test_minimal_row_with_id_alias(write_csv):
    corpus = load_reviews(write_csv(["r1,DXB,Clean terminal,5"], header="id,airport,text,rating"))
    assert corpus.records[0].review_id == "r1"


@pytest.mark.parametrize("rating", ["0", "6", "-1"])
def test_rating_out_of_range(write_csv, rating):
    with pytest.raises(RatingOutOfRange) as info:
        load_reviews(write_csv([f"r1,DXB,x,{rating}"]))
    assert info.value.row == 1
    assert str(info.value.value) == rating


def test_duplicate_id_names_the_id(write_csv):
    path = write_csv(["a,DXB,one,4", "b,DOH,two,2", "a,DXB,three,1"])
    with pytest.raises(DuplicateReviewId) as info:
        load_reviews(path)
    assert info.value.review_id == "a"
    assert info.value.row == 3


def test_malformed_rows(write_csv):
    with pytest.raises(MalformedRow) as info:
        load_reviews(write_csv(["r1,DXB,x,5", "r2,DXB,x,five"]))
    assert info.value.row == 2
    with pytest.raises(MalformedRow):
        load_reviews(write_csv(["r1,DXB,x,5,extra"]))
    with pytest.raises(MalformedRow):
        load_reviews(write_csv(["r1,DXB"]))
    with pytest.raises(MalformedRow) as info:
        load_reviews(write_csv(["r1,DXB,5"], header="review_id,airport,rating"))
    assert info.value.row == 0


def test_invalid_utf8_is_malformed(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_bytes(b"review_id,airport,text,rating\nr1,DXB,ok,5\nr2,DXB,caf\xe9,4\n")
    with pytest.raises(MalformedRow) as info:
        load_reviews(path)
    assert info.value.row == 2


def test_quoted_text_and_empty_text(write_csv):
    corpus = load_reviews(write_csv(['r1,DXB,"Slow, very slow\nsecurity ""line""",2', "r2,DOH,,5"]))
    assert corpus.records[0].text == 'Slow, very slow\nsecurity "line"'
    assert corpus.records[1].text == ""
    assert corpus.n_empty_text == 1


def test_jsonl(tmp_path):
    path = tmp_path / "r.jsonl"
    lines = [
        {"review_id": "r1", "airport": "DXB", "text": "Good", "rating": 4, "reviewer_name": "X"},
        {"review_id": "r2", "airport": "DOH", "text": None, "rating": 1},
    ]
    path.write_text("\n".join(json.dumps(x) for x in lines) + "\n\n", encoding="utf-8")
    corpus = load_reviews(path)
    assert [r.review_id for r in corpus] == ["r1", "r2"]
    assert corpus.records[1].text == ""
    path.write_text('{"review_id": "r1"\n', encoding="utf-8")
    with pytest.raises(MalformedRow) as info:
        load_reviews(path)
    assert info.value.row == 1


def test_scrub_drops_personal_and_time_fields():
    raw = {
        "id": "r1", "airport": "DXB", "text": "fine", "rating": "4",
        "reviewer_name": "X", "photo_url": "https://x/y.jpg", "review_datetime_utc": "2021-05-01 10:00",
    }
    rec = scrub_fields(raw)
    assert rec == ReviewRecord("r1", "DXB", "fine", 4)
    assert set(rec.to_raw()) == {"review_id", "airport", "text", "rating"}


def test_scrub_identity_on_minimal():
    raw = {"review_id": "r1", "airport": "DXB", "text": "fine", "rating": "4"}
    assert scrub_fields(raw).to_raw() == raw


def test_scrub_missing_rating():
    with pytest.raises(MissingRequiredField) as info:
        scrub_fields({"review_id": "r1", "airport": "DXB", "text": "x"})
    assert info.value.field == "rating"


def test_corpus_rejects_duplicates_directly():
    rec = ReviewRecord("a", "DXB", "", 3)
    with pytest.raises(DuplicateReviewId):
        Corpus((rec, rec))


records = st.builds(
    ReviewRecord,
    review_id=st.text(st.characters(blacklist_categories=("Cs", "Cc", "Zs", "Zl", "Zp")), min_size=1, max_size=8),
    airport_code=st.sampled_from(["DXB", "DOH", "LHR"]),
    text=st.text(st.characters(blacklist_categories=("Cs",), blacklist_characters="\r\x00"), max_size=60),
    rating=st.integers(1, 5),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(records, max_size=8, unique_by=lambda r: r.review_id), st.sampled_from(["csv", "jsonl"]))
def test_round_trip(tmp_path_factory, recs, fmt):
    path = tmp_path_factory.mktemp("rt") / f"c.{fmt}"
    write_reviews(recs, path)
    assert list(load_reviews(path).records) == recs


@settings(max_examples=100)
@given(records, st.dictionaries(st.sampled_from(["name", "image", "timestamp", "likes"]), st.text(max_size=5)))
def test_scrub_idempotent(rec, extra):
    raw = {**rec.to_raw(), **extra}
    once = scrub_fields(raw)
    assert scrub_fields(once.to_raw()) == once
