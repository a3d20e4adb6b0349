import time

import pytest

from drkit import kernels

ACCEPTANCE: list[tuple[str, bool, str]] = []
_START = {}


def pytest_sessionstart(session):
    _START["t"] = time.perf_counter()


@pytest.fixture(params=kernels.available())
def backend(request):
    prev = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(prev)


@pytest.fixture
def verdict():
    """Record one acceptance line: verdict(label, ok, detail)."""

    def record(label: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE.append((label, bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    tr.write_line(f"session wall time {time.perf_counter() - _START.get('t', time.perf_counter()):.1f} s")
