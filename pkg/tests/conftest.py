import json
import time
from importlib import resources

import pytest

SUITE_BUDGET_S = 120.0

SHOPPING_REVIEW = (
    "Terminal Its clean and good for shopping if you like designer clothing shops, watches, perfume "
    "Limited selection of sunglasses, from each brand all in one shop Only water fountain to refill "
    "your water bottle Some nice comfy lounging style seats can be found if you look hard enough A good "
    "area to get some work done with charging points and desks are also here Get a full body massage "
    "for about £. Toilets are decent"
)
AMENITIES_REVIEW = (
    "Could be delivered better amenities for the passengers The wifi signal is really slow and weak, "
    "can't even make a WhatsApp call Food in restaurants in the airport is way too expensive and bland "
    "Customer service, cleanliness and the shuttle service between terminals are decent Strollers are "
    "provided for the kids free of charge inside the airport is helpful"
)

_results: dict[str, str] = {}
_started = time.perf_counter()


@pytest.fixture(scope="session")
def lexicon_doc():
    return json.loads(resources.files("airport_absa").joinpath("data/lexicon.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def opinion_doc():
    return json.loads(resources.files("airport_absa").joinpath("data/opinion_words.json").read_text("utf-8"))


@pytest.fixture
def write_csv(tmp_path):
    def _write(rows, name="reviews.csv", header="review_id,airport,text,rating"):
        path = tmp_path / name
        path.write_text(header + "\n" + "".join(r + "\n" for r in rows), encoding="utf-8")
        return path

    return _write


def pytest_runtest_logreport(report):
    marker = report.keywords.get("acceptance")
    if marker is None:
        return
    label = getattr(report, "_acceptance_label", None) or report.nodeid
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[label] = "PASS" if report.outcome == "passed" else "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report._acceptance_label = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _started
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_results):
        terminalreporter.write_line(f"{_results[label]}  {label}")
    if len(_results) >= 7:
        verdict = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
        terminalreporter.write_line(f"{verdict}  AC8 full suite under {SUITE_BUDGET_S:.0f} s (took {elapsed:.1f} s)")


def pytest_sessionfinish(session, exitstatus):
    if len(_results) >= 7 and time.perf_counter() - _started >= SUITE_BUDGET_S:
        session.exitstatus = 1
