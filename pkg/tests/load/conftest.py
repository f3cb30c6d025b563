"""
Fixtures for the load test suite (tests/load/).

This conftest.py is picked up when tests are run explicitly:
    pytest tests/load/ -v -s

It is NOT auto-collected during a plain `pytest` run because pytest.ini
sets `norecursedirs = tests/load`. These tests reproduce published-scale
tables and take minutes; CYCLES_JOBS controls the worker count.
"""

import os

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "load: Published-scale sweeps and throughput")


@pytest.fixture(scope="session")
def jobs() -> int:
    return int(os.environ.get("CYCLES_JOBS") or os.cpu_count() or 1)
