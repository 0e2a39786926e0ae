import time

import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")

_LINES = {}


class Criterion:
    """Times one acceptance criterion and records a pass/fail line."""

    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.elapsed = None

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self._t0
        return False

    def check(self, ok, detail=""):
        within = self.elapsed is not None and self.elapsed < self.limit
        passed = bool(ok) and within
        status = "PASS" if passed else "FAIL"
        timing = f"{self.elapsed:.2f}s < {self.limit:g}s" if within else f"{self.elapsed:.2f}s exceeds {self.limit:g}s"
        line = f"[{status}] criterion {self.number:>2}: {self.title} ({timing})"
        if detail:
            line += f" {detail}"
        _LINES[self.number] = line
        print(line)
        assert ok, detail or self.title
        assert within, f"runtime {self.elapsed:.2f}s over the {self.limit}s budget"


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_LINES):
        terminalreporter.write_line(_LINES[n])
