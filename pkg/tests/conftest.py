import json
from pathlib import Path

import pytest

from rankfact import Poly, PolyMatrix
from rankfact.serialize import matrix_from_json, parse_matrix_file

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

X = Poly.x()

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the numbered acceptance criteria")


def load_matrix(name: str) -> PolyMatrix:
    return parse_matrix_file(FIXTURES / f"{name}.json")


def load_factors(name: str):
    doc = json.loads((FIXTURES / f"{name}.json").read_text())
    E = doc.get("E")
    return (matrix_from_json(doc["L"]), None if E is None else matrix_from_json(E),
            matrix_from_json(doc["R"]))


@pytest.fixture
def fixture_matrix():
    return load_matrix


@pytest.fixture
def fixture_factors():
    return load_factors


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    failed = rep.failed
    prev = _results.get(number, (title, True))
    if rep.when == "call" or failed:
        _results[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, ok = _results[number]
        terminalreporter.write_line(f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}")
