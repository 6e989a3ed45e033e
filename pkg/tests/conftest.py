import pytest
from hypothesis import HealthCheck, settings

from hyperkalman.fixtures import ch2, ch3, eq3
from hyperkalman.order import enumerate_structures

settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


def ihl_corpus():
    """Every labeled IHL of size 1..4 plus the three named fixtures."""
    return [h for n in range(1, 5) for h in enumerate_structures("IHL", n)] + [ch2(), ch3(), eq3()]


@pytest.fixture(scope="session")
def corpus():
    return ihl_corpus()


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion gate")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    if rep.when == "setup" and rep.passed:
        return
    _CRITERIA[n] = (title, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance")
    for n in sorted(_CRITERIA):
        title, ok, secs = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}  {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")
