import os

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criteria.setdefault(mark.args[0], []).append(item.nodeid)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = mark.args[0]
    if rep.when == "call" or rep.outcome != "passed":
        prev = _outcomes.get(key, "PASS")
        now = "PASS" if rep.outcome == "passed" else ("SKIP" if rep.skipped else "FAIL")
        _outcomes[key] = "FAIL" if "FAIL" in (prev, now) else ("SKIP" if "SKIP" in (prev, now) else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {key:>2}: {_outcomes[key]}")
