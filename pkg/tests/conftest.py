import time

import pytest

# criterion number -> (title, passed, elapsed, budget, detail)
ACCEPTANCE: dict[int, tuple] = {}


class Criterion:
    """Times a block, records pass/fail and enforces the time budget."""

    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed <= self.budget
        detail = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}"
        if exc_type is None and elapsed > self.budget:
            detail = f"over budget ({elapsed:.3g} s > {self.budget:g} s)"
        ACCEPTANCE[self.number] = (self.title, ok, elapsed, self.budget, detail)
        if exc_type is None and not ok:
            raise AssertionError(detail)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, elapsed, budget, detail = ACCEPTANCE[num]
        line = f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title} ({elapsed:.3f} s, budget {budget:g} s)"
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)
