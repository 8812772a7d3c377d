"""Shared fixtures and the per-criterion acceptance report."""

from __future__ import annotations

from collections import OrderedDict

import pytest

from dioph.classify import PellEquation
from dioph.conic import GeneralConic

# (a, b, c) for a x^2 - b y^2 + c = 0
PELL_FIXTURES = {
    "2x2-3y2=5": PellEquation(2, 3, -5),
    "x2-3y2=4": PellEquation(1, 3, -4),
    "x2-12y2=-3": PellEquation(1, 12, 3),
    "x2-6y2=10": PellEquation(1, 6, -10),
    "x2-12y2=9": PellEquation(1, 12, -9),
    "14x2-3y2=18": PellEquation(14, 3, -18),
}
MIXED_CONIC = GeneralConic(9, 6, -13, -6, -16, 20)


@pytest.fixture(params=sorted(PELL_FIXTURES))
def pell_fixture(request) -> PellEquation:
    return PELL_FIXTURES[request.param]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._criteria = OrderedDict()


def pytest_collection_modifyitems(config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            config._criteria.setdefault(mark.args[0], [])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and rep.passed:
        return
    results = item.config._criteria.setdefault(mark.args[0], [])
    if rep.when == "call" or rep.failed:
        results.append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = getattr(config, "_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(crit):
        runs = crit[n]
        if not runs:
            continue
        ok = all(p for _, p in runs)
        failed = [name for name, p in runs if not p]
        tail = "" if ok else f"  (failed: {', '.join(failed)})"
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}{tail}")
