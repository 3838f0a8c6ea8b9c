from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from formrank.gf import GF  # noqa: E402

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64]


@pytest.fixture(params=SMALL_ORDERS, ids=lambda q: f"GF{q}")
def small_field(request) -> GF:
    from formrank.gf import prime_power

    p, k = prime_power(request.param)
    return GF(p, k)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for an acceptance criterion and assert it."""

    def record(number: int, title: str, ok: bool, seconds: float, limit: float | None) -> None:
        timely = limit is None or seconds < limit
        verdict = "PASS" if ok and timely else "FAIL"
        bound = f", limit {limit:g}s" if limit is not None else ""
        line = f"criterion {number:2d} {verdict}: {title} ({seconds:.2f}s{bound})"
        print(line)
        _ACCEPTANCE_LINES.append(line)
        assert ok, line
        assert timely, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
