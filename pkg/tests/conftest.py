import time

import pytest

_CRITERIA = []


class CriterionRecorder:
    """Times one acceptance criterion and records a pass/fail line for the summary."""

    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.details = []
        self.start = time.perf_counter()

    def note(self, text):
        self.details.append(text)

    def finish(self, ok):
        elapsed = time.perf_counter() - self.start
        in_time = self.limit is None or elapsed < self.limit
        status = "PASS" if ok and in_time else "FAIL"
        limit = f" (limit {self.limit:g}s)" if self.limit else ""
        line = f"criterion {self.number:>2} {status}  {self.title}  [{elapsed:.2f}s{limit}]"
        _CRITERIA.append((self.number, line, list(self.details)))
        print(line)
        for d in self.details:
            print(f"    {d}")
        return ok and in_time


@pytest.fixture
def criterion():
    return CriterionRecorder


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for _, line, details in sorted(_CRITERIA, key=lambda t: t[0]):
        terminalreporter.write_line(line)
        for d in details:
            terminalreporter.write_line(f"    {d}")
