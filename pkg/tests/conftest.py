"""
Root-level fixtures shared across all test categories.

Searches are cheap at depth 500 but reused by several tests, so the
reference reports are session-scoped. Reports are frozen dataclasses;
sharing them cannot leak state between tests.
"""

import pytest

from rational_cycles.census import search_denominator


@pytest.fixture(scope="session")
def k5_report():
    return search_denominator(5, 500)


@pytest.fixture(scope="session")
def k7_report():
    return search_denominator(7, 500)


@pytest.fixture(scope="session")
def k13_report():
    return search_denominator(13, 500)


@pytest.fixture(scope="session")
def k259_report():
    """Holds cycles at (24, 12) and (36, 18): equal ratio, length ratio 3/2."""
    return search_denominator(259, 100)


@pytest.fixture
def clean_env(monkeypatch):
    """Remove every CYCLES_* variable so defaults apply."""
    for name in (
        "CYCLES_DEPTH",
        "CYCLES_STEP_CAP",
        "CYCLES_JOBS",
        "CYCLES_OUTPUT_DIR",
        "CYCLES_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch
