"""Shared pytest configuration.

Tests marked ``@pytest.mark.acceptance(n, "summary")`` are collected into a
pass/fail table printed at the end of the run, one line per criterion,
whatever the capture mode.
"""

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, summary): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, summary = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _RESULTS[number] = (summary, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        summary, outcome = _RESULTS[number]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {summary}")
