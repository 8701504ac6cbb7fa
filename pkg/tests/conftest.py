"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""
from collections import defaultdict

import pytest

_outcomes = defaultdict(list)  # criterion -> [(test name, passed, details)]
_labels = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion a test belongs to")


@pytest.fixture
def measure(request):
    """measure(name, value, bound) stores a measured quantity for the summary line."""
    def record(name, value, bound=None):
        text = f"{name}={value:.3e}" if bound is None else f"{name}={value:.3e} (bound {bound:g})"
        request.node.user_properties.append(("measure", text))
    return record


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        number, label = mark.args
        _labels[number] = label
        item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties) if report.user_properties else {}
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        details = [v for k, v in report.user_properties if k == "measure"]
        _outcomes[props["criterion"]].append((report.nodeid.split("::")[-1], report.passed, details))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        ok = all(passed for _, passed, _ in results)
        tr.write_line(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {_labels[number]}")
        for name, passed, details in results:
            suffix = f"  [{'; '.join(details)}]" if details else ""
            tr.write_line(f"    {'pass' if passed else 'FAIL'} {name}{suffix}")
