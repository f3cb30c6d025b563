"""Unit-test fixtures."""

import random

import pytest


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so randomised checks are reproducible."""
    return random.Random(20240115)
