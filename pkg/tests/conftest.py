from collections import defaultdict

import pytest

_CRITERIA = {
    1: "torsion golden lists",
    2: "tile-count reproduction",
    3: "constructor validity sweep",
    4: "glue arithmetic",
    5: "non-squareness properties",
    6: "bounded point search",
    7: "classifier truth table",
    8: "exact kernel validation",
}
_results = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    rep = outcome.get_result()
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results[marker.args[0]].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for crit, label in _CRITERIA.items():
        runs = _results.get(crit)
        status = "NOT RUN" if not runs else ("PASS" if all(runs) else "FAIL")
        terminalreporter.write_line(f"criterion {crit} ({label}): {status}")
