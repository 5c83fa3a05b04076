import pytest

from sbham import FeedbackTable, Params

REF_CYCLE = "000100201202210211011121222"
REF_S = [(0, 1), (0, 2), (1, 0), (1, 2)]


@pytest.fixture
def p33():
    return Params(3, 3)


@pytest.fixture
def ref_b(p33):
    return FeedbackTable.from_choice_set(p33, REF_S)


@pytest.fixture
def small_b():
    """m=3, n=2 with S = {0}: b(0)=0, b(1)=b(2)=1."""
    return FeedbackTable.from_choice_set(Params(3, 2), [(0,)])


def w(s):
    return tuple(int(c, 36) for c in s)


# -- acceptance summary ------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or rep.outcome != "passed":
        _criteria.setdefault(marker.args, []).append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcomes in sorted(_criteria.items()):
        if "failed" in outcomes:
            status = "FAIL"
        elif "passed" in outcomes:
            status = "PASS"
        else:
            status = "SKIP"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
