"""
Factory functions and reference data for tests.

Factories are plain functions (not fixtures) so test data stays explicit
and easy to customise inline with **overrides. Reference tables hold
hand-checked attractors for small denominators.
"""

from rational_cycles.census import AttractorRecord, DenominatorReport

# k -> [(min_numerator, lambda, omega), ...] sorted by min_numerator, depth 500
ATTRACTOR_TABLE = {
    1: [(1, 2, 1)],
    5: [(1, 3, 1), (19, 5, 3), (23, 5, 3), (187, 27, 17), (347, 27, 17)],
    7: [(5, 4, 2)],
    11: [(1, 6, 2), (13, 14, 8)],
    13: [
        (1, 4, 1),
        (131, 24, 15),
        (211, 8, 5),
        (227, 8, 5),
        (251, 8, 5),
        (259, 8, 5),
        (283, 8, 5),
        (287, 8, 5),
        (319, 8, 5),
    ],
}

K7_CYCLE = (5, 11, 20, 10)
K19_CYCLE = (5, 17, 35, 62, 31, 56, 28, 14, 7, 20, 10)
K31_CYCLE = (
    13, 35, 68, 34, 17, 41, 77, 131, 212, 106, 53, 95,
    158, 79, 134, 67, 116, 58, 29, 59, 104, 52, 26,
)

# I(n), the number of irreducible cycles of length n, n = 1..14
IRREDUCIBLE_COUNTS = (2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335, 630, 1161)


def make_record(**overrides) -> AttractorRecord:
    """
    Return the single D_7 attractor. Overriding only k/cycle_numerators goes
    through from_cycle; any other override builds the record field by field
    so validation sees exactly what the test passed.
    """
    if set(overrides) <= {"k", "cycle_numerators"}:
        return AttractorRecord.from_cycle(
            overrides.get("k", 7), overrides.get("cycle_numerators", K7_CYCLE)
        )
    fields = {
        "k": 7,
        "cycle_numerators": K7_CYCLE,
        "lam": 4,
        "omega": 2,
        "min_numerator": 5,
    }
    fields.update(overrides)
    return AttractorRecord(**fields)


def make_report(**overrides) -> DenominatorReport:
    """Return a decided depth-500 report holding the D_7 attractor."""
    attractors = overrides.pop("attractors", (make_record(),))
    fields = {
        "k": attractors[0].k if attractors else 7,
        "depth": 500,
        "attractors": tuple(attractors),
        "undecided_numerators": (),
        "step_cap": 100_000,
        "basin_sizes": tuple(1 for _ in attractors),
    }
    fields.update(overrides)
    return DenominatorReport(**fields)


def table_rows(report: DenominatorReport):
    """(min_numerator, lambda, omega) for every attractor of a report."""
    return [(r.min_numerator, r.lam, r.omega) for r in report.attractors]
