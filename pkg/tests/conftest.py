import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {}


class Criterion:
    """Records one PASS/FAIL line for an acceptance criterion."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.details = []
        self.ok = None

    def note(self, text):
        self.details.append(text)

    def check(self, ok, detail=""):
        if detail:
            self.note(detail)
        self.ok = bool(ok) if self.ok is None else self.ok and bool(ok)
        return ok

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({'; '.join(self.details)})" if self.details else ""
        return f"[{status}] criterion {self.number}: {self.title}{extra}"


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("acceptance")
    number, title = marker.args
    c = Criterion(number, title)
    _CRITERIA[number] = c
    yield c
    print(c.line())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call" and report.failed:
        c = _CRITERIA.get(marker.args[0])
        if c is not None:
            c.ok = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        c = _CRITERIA[number]
        if c.ok is None:
            c.ok = False
        terminalreporter.write_line(c.line())
