from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from quandlekit.catalog import catalog

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE: list[tuple[int, str, bool, float, str]] = []


@pytest.fixture(scope="session")
def small_catalog():
    return catalog(8)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, secs, detail in sorted(ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {num:2d}: {status} ({secs:6.2f}s) {title}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
