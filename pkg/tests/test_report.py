import csv
import io

import pytest
from hypothesis import given, strategies as st

import eval_fixture
from airport_absa.aggregate import build_row, summarize_by_airport
from airport_absa.corpus import ReviewRecord
from airport_absa.errors import UnsupportedFormat
from airport_absa.evaluate import compute_accuracy
from airport_absa.lexicon import Aspect, AspectMention
from airport_absa.report import RenderSpec, fmt2, parse_table, render, table
from airport_absa.scoring import PolarityScore, ScoredMention


def row(review_id, airport, **values):
    rec = ReviewRecord(review_id, airport, "", 4)
    parts = []
    for i, (aspect, v) in enumerate(values.items()):
        score = PolarityScore(v, 0.0, 1 - v) if v >= 0 else PolarityScore(0.0, -v, 1 + v)
        parts.append(ScoredMention(AspectMention(review_id, i, Aspect(aspect), aspect, (0, 1)), score))
    return build_row(rec, parts)


@pytest.fixture
def worked_rows():
    return [row("r1", "DXB", facilities=0.94, terminal=0.98), row("r2", "DOH", facilities=-0.89, terminal=0.99)]


@pytest.mark.parametrize("value, text", [(0.94, ".94"), (-0.89, "-.89"), (0.0, ".00"), (1.0, "1.00"), (None, "-")])
def test_fmt2(value, text):
    assert fmt2(value) == text


def test_matrix_table_shows_worked_cells(worked_rows):
    data, name = render(worked_rows, RenderSpec("matrix"))
    assert name == "matrix.txt"
    parsed = parse_table(data.decode())
    assert [(r["facilities"], r["terminal"]) for r in parsed] == [(".94", ".98"), ("-.89", ".99")]
    assert all(r["staff"] == "0" and r["staff_n"] == "0" for r in parsed)


def test_matrix_csv_and_count_sort(worked_rows):
    data, name = render(worked_rows, RenderSpec("matrix", "csv"))
    assert name == "matrix.csv"
    assert [r["review_id"] for r in csv.DictReader(io.StringIO(data.decode()))] == ["r1", "r2"]
    rows = worked_rows + [row("r3", "DXB", staff=0.5, access=0.1, arrival=0.2)]
    parsed = parse_table(render(rows, RenderSpec("matrix", sort_key="count"))[0].decode())
    assert parsed[0]["review_id"] == "r3"


def test_summary_table_two_airports(worked_rows):
    summaries = summarize_by_airport(worked_rows)
    parsed = parse_table(render(summaries, RenderSpec("summary"))[0].decode())
    assert len(parsed) == 16
    fac = {r["airport"]: r["mean_signed"] for r in parsed if r["aspect"] == "facilities"}
    assert fac == {"DOH": "-.89", "DXB": ".94"}
    assert {r["mean_signed"] for r in parsed if r["aspect"] == "staff"} == {"-"}


def test_summary_sorted_by_count(worked_rows):
    rows = worked_rows + [row("r3", "DXB", staff=0.5), row("r4", "DXB", staff=0.5), row("r5", "DXB", staff=0.1)]
    parsed = parse_table(render(summarize_by_airport(rows), RenderSpec("summary", sort_key="count"))[0].decode())
    dxb = [r["aspect"] for r in parsed if r["airport"] == "DXB"]
    assert dxb[:3] == ["staff", "facilities", "terminal"]


def test_evaluation_renderings():
    rows, corpus = eval_fixture.build()
    report = compute_accuracy(rows, corpus)
    parsed = {r["field"]: r["value"] for r in parse_table(render(report, RenderSpec("evaluation"))[0].decode())}
    assert parsed["accuracy"] == "0.8000" and parsed["tp"] == "9"
    text = render(report, RenderSpec("evaluation", "csv"))[0].decode()
    assert dict(csv.reader(io.StringIO(text)))["fn"] == "2"
    with pytest.raises(UnsupportedFormat):
        RenderSpec("evaluation", "bar-chart-image")
    with pytest.raises(UnsupportedFormat):
        RenderSpec("matrix", "pdf")
    with pytest.raises(ValueError):
        RenderSpec("nothing")


def test_charts_are_png_and_deterministic(worked_rows):
    summaries = summarize_by_airport(worked_rows)
    a, name = render(summaries, RenderSpec("summary", "bar-chart-image"))
    b, _ = render(summaries, RenderSpec("summary", "bar-chart-image"))
    assert name == "summary.png"
    assert a.startswith(b"\x89PNG") and a == b
    m, _ = render(worked_rows, RenderSpec("matrix", "bar-chart-image"))
    assert m.startswith(b"\x89PNG")


def test_wrong_data_type():
    with pytest.raises(TypeError):
        render([1, 2], RenderSpec("matrix"))
    with pytest.raises(TypeError):
        render("x", RenderSpec("evaluation"))


cells = st.text(st.characters(blacklist_characters="|\n\r", blacklist_categories=("Cs", "Zs", "Cc", "Zl", "Zp")),
                min_size=1, max_size=8)


@given(st.lists(cells, min_size=1, max_size=4, unique=True).flatmap(
    lambda h: st.tuples(st.just(h), st.lists(st.lists(cells, min_size=len(h), max_size=len(h)), max_size=5))))
def test_table_round_trip(args):
    header, body = args
    assert parse_table(table(header, body)) == [dict(zip(header, r)) for r in body]
