import time
from contextlib import contextmanager

import pytest
from hypothesis import settings

# exact arithmetic is slow enough that per-example deadlines only add noise
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_verdicts = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_verdicts] = []


@pytest.fixture
def criterion(request):
    """Context manager that times a block and records one PASS/FAIL line for it."""
    lines = request.config.stash[_verdicts]

    @contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        notes: list[str] = []
        try:
            yield notes
            elapsed = time.perf_counter() - start
            if limit is not None:
                assert elapsed < limit, f"took {elapsed:.1f} s, limit {limit:.0f} s"
        except BaseException as exc:
            line = f"criterion {number}: FAIL  {title}  ({type(exc).__name__}: {exc})"
            lines.append(line)
            print(line)
            raise
        extra = f"; {'; '.join(notes)}" if notes else ""
        line = f"criterion {number}: PASS  {title}  ({elapsed:.1f} s{extra})"
        lines.append(line)
        print(line)

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_verdicts, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
