from __future__ import annotations

import pytest

from kronpath import build_index, grammar_to_rsm, load_graph, parse_grammar

TWO_CYCLE_LINES = ["0 a 1", "1 a 0", "1 b 1"]
G1_TEXT = "S -> a S b | a b\n"

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        _acceptance[number] = (status, title)
        print(f"\ncriterion {number}: {status} - {title}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        status, title = _acceptance[number]
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")


@pytest.fixture
def two_cycle():
    return load_graph(TWO_CYCLE_LINES)


@pytest.fixture
def g1():
    return parse_grammar(G1_TEXT)


@pytest.fixture
def g1_rsm(g1):
    return grammar_to_rsm(g1)


@pytest.fixture
def golden(two_cycle, g1_rsm):
    return build_index(g1_rsm, two_cycle, keep_deltas=True)
