"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_results: dict[str, list] = {}
_titles: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion a test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            cid, title = mark.args
            _titles.setdefault(cid, title)
            _results.setdefault(cid, [])


def pytest_runtest_logreport(report):
    # a failed or skipped setup is the only outcome for that test
    if report.when != "call" and (report.when != "setup" or report.outcome == "passed"):
        return
    for key, cid in report.user_properties:
        if key == "criterion":
            _results[cid].append((report.nodeid, report.outcome))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_results, key=lambda c: (int(c.split("-")[0]), c)):
        outcomes = [o for _, o in _results[cid]]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIP"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {cid:<6} {status:<7} {_titles[cid]}")
