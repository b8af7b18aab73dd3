from __future__ import annotations

import time

import pytest

_LINES = pytest.StashKey[dict]()


class Criterion:
    """Context manager that times one acceptance criterion and records a pass/fail line."""

    def __init__(self, number: int, budget: float | None, sink):
        self.number = number
        self.budget = budget
        self.sink = sink
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        over = self.budget is not None and elapsed >= self.budget
        if exc_type is not None:
            why = f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        elif over:
            why = f"{self.detail} (over the {self.budget:g} s budget)"
        else:
            why = self.detail
        ok = exc_type is None and not over
        line = f"criterion {self.number:>2}: {'PASS' if ok else 'FAIL'}  [{elapsed:5.1f} s]  {why}"
        self.sink(self.number, line)
        if exc_type is None and over:
            raise AssertionError(line)
        return False


@pytest.fixture
def criterion(request, capsys):
    lines = request.config.stash.setdefault(_LINES, {})

    def sink(number, line):
        lines[number] = line
        with capsys.disabled():
            print("\n" + line)

    def make(number: int, budget: float | None = None) -> Criterion:
        return Criterion(number, budget, sink)

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(lines):
        terminalreporter.write_line(lines[number])
