"""
Integration-test fixture: a small census wired end to end.

A sweep over k <= 101 at depth 500 feeds the agreement, registry and
phenomena tests; the namespace keeps the inputs next to the outputs.
"""

import types

import pytest

from rational_cycles.census import admissible_denominators, sweep


@pytest.fixture(scope="module")
def small_census():
    ks = admissible_denominators(101)
    depth = 500
    reports = sweep(ks, depth, jobs=1)
    return types.SimpleNamespace(ks=ks, depth=depth, reports=reports)
