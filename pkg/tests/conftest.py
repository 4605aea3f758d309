import time

import pytest

_LINES: list[str] = []


class Recorder:
    def __init__(self, number: int, title: str, budget: float):
        self.number = number
        self.title = title
        self.budget = budget
        self.start = time.perf_counter()

    def finish(self, ok: bool, detail: str) -> bool:
        elapsed = time.perf_counter() - self.start
        in_time = elapsed < self.budget
        status = "PASS" if ok and in_time else "FAIL"
        timing = f"{elapsed:.1f}s of {self.budget:.0f}s"
        if not in_time:
            timing += " (over budget)"
        line = f"criterion {self.number:>2} {status}  {self.title}: {detail} [{timing}]"
        print(line)
        _LINES.append(line)
        return ok and in_time


@pytest.fixture
def criterion():
    return Recorder


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
