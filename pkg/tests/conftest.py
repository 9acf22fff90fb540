import time
from contextlib import contextmanager

import pytest

_RESULTS: list[str] = []


@pytest.fixture
def criterion():
    """Time a block, assert it met its limit, and log one pass/fail line."""

    @contextmanager
    def run(number, title, limit=None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert limit is None or elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            budget = f" (limit {limit}s)" if limit is not None else ""
            line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s{budget}  {title}"
            _RESULTS.append(line)
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
