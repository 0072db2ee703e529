import os
import sys
from functools import lru_cache
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = _CRITERIA.get(report.nodeid)
    if crit is None:
        return
    number, title = crit
    entry = _RESULTS.setdefault(number, [title, True, []])
    if report.outcome != "passed":
        entry[1] = False
        entry[2].append(report.nodeid.split("::")[-1])


_CRITERIA = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA[item.nodeid] = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, failed = _RESULTS[number]
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        tr.write_line(line)


@lru_cache(maxsize=None)
def _iso():
    from qdesign.constructions import iso_mub
    return iso_mub()


@pytest.fixture(scope="session")
def iso():
    return _iso()


@pytest.fixture(scope="session")
def iso_mub_set(iso):
    return iso[0]


@pytest.fixture(scope="session")
def standard_mub():
    from qdesign.constructions import standard_mub_d4
    return standard_mub_d4()
