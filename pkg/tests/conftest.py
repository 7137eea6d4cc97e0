"""Prints one verdict line per acceptance criterion after the test run."""

import pytest

_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "test_acceptance" not in item.nodeid:
        return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    _results[item.nodeid] = (doc, report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for nodeid in sorted(_results):
        doc, passed = _results[nodeid]
        terminalreporter.write_line(("[PASS] " if passed else "[FAIL] ") + doc)
