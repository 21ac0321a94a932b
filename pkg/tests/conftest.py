import time
from contextlib import contextmanager

import pytest

_LOG_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LOG_KEY] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LOG_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager that times one acceptance criterion and logs PASS/FAIL."""
    log = request.config.stash[_LOG_KEY]

    @contextmanager
    def run(number: int, title: str, budget_s: float):
        start = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            line = f"FAIL  [{number}] {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
            log.append(line)
            print(line)
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < budget_s
        line = f"{'PASS' if ok else 'FAIL'}  [{number}] {title} ({elapsed:.2f} s, budget {budget_s:g} s)"
        log.append(line)
        print(line)
        assert ok, f"criterion {number} exceeded its {budget_s} s budget ({elapsed:.2f} s)"

    return run
