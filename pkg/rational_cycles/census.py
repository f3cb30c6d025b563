"""
Depth-N attractor searches over D_k.

A search of depth N for denominator k surveys the fractions j/k with
1 <= j <= N and gcd(j, k) = 1 and records which attracting cycle each
orbit enters. Non-coprime j belong to a smaller denominator and are
skipped.

DenominatorSearch keeps its state between calls so a depth-N search can be
extended to depth N' > N without re-walking any orbit: every numerator ever
visited is remembered together with the attractor it leads to.

Sweeps over many denominators run one DenominatorSearch per k, in worker
processes when jobs > 1. Results are always returned sorted by k, so the
worker count never changes the output.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from rational_cycles.parity_vectors import ParityVector, denominator_of, periodic_point
from rational_cycles.rational_core import (
    DEFAULT_STEP_CAP,
    Rational2,
    canonical_rotation,
    t_map_numerator,
)

logger = logging.getLogger(__name__)

# Depth/A pairs from the published single-attractor census, k <= 2000.
PUBLISHED_A_TABLE: Tuple[Tuple[int, int], ...] = (
    (20, 213),
    (50, 184),
    (100, 181),
    (200, 176),
    (400, 172),
    (800, 166),
    (1600, 166),
    (2400, 166),
    (3200, 162),
)


def is_admissible(k: int) -> bool:
    """True when T preserves D_k, i.e. k ≡ 1 or 5 (mod 6)."""
    return k >= 1 and k % 6 in (1, 5)


def require_admissible(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"Denominator must be an int, got {type(k).__name__}")
    if not is_admissible(k):
        raise ValueError(
            f"k={k} is not ≡ 1 or 5 (mod 6): T does not preserve D_{k}"
        )


def admissible_denominators(k_max: int, k_min: int = 1) -> List[int]:
    """k ≡ 1, 5 (mod 6) with k_min <= k <= k_max, ascending."""
    return [k for k in range(max(k_min, 1), k_max + 1) if is_admissible(k)]


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AttractorRecord:
    """
    One cycle of T on D_k, stored by numerators in canonical rotation.

    lam is the cycle length, omega the number of odd members. Construction
    checks that T closes around the listed numerators.
    """

    k: int
    cycle_numerators: Tuple[int, ...]
    lam: int
    omega: int
    min_numerator: int

    def __post_init__(self):
        nums = tuple(self.cycle_numerators)
        object.__setattr__(self, "cycle_numerators", nums)
        _validate_record(self)

    @classmethod
    def from_cycle(cls, k: int, numerators: Iterable[int]) -> "AttractorRecord":
        nums = canonical_rotation(numerators)
        return cls(
            k=k,
            cycle_numerators=nums,
            lam=len(nums),
            omega=sum(j & 1 for j in nums),
            min_numerator=nums[0] if nums else 0,
        )

    @property
    def sort_key(self) -> Tuple[int, int]:
        return (self.k, self.min_numerator)

    @property
    def elements(self) -> Tuple[Rational2, ...]:
        return tuple(Rational2(j, self.k) for j in self.cycle_numerators)

    @property
    def parity_vector(self) -> ParityVector:
        return ParityVector.from_cycle(self.cycle_numerators)

    def canonical(self) -> "AttractorRecord":
        return AttractorRecord.from_cycle(self.k, self.cycle_numerators)


def _validate_record(record: AttractorRecord) -> None:
    nums = record.cycle_numerators
    if not nums:
        raise ValueError("An attractor needs at least one element")
    require_admissible(record.k)
    if any(j < 1 for j in nums):
        raise ValueError(f"Attractor numerators must be positive: {nums[:8]}")
    if len(set(nums)) != len(nums):
        raise ValueError(f"Attractor numerators must be distinct: {nums[:8]}")
    if nums[0] != min(nums) or record.min_numerator != nums[0]:
        raise ValueError(f"Attractor for k={record.k} is not in canonical rotation")
    if record.lam != len(nums):
        raise ValueError(f"lam={record.lam} but the cycle has {len(nums)} elements")
    if record.omega != sum(j & 1 for j in nums):
        raise ValueError(f"omega={record.omega} does not match the odd members")
    for i, j in enumerate(nums):
        if math.gcd(j, record.k) != 1:
            raise ValueError(f"{j}/{record.k} is not in lowest terms")
        if t_map_numerator(j, record.k) != nums[(i + 1) % len(nums)]:
            raise ValueError(f"T does not close around the cycle at {j}/{record.k}")


def check_formula_agreement(record: AttractorRecord) -> bool:
    """
    The closed form applied to the record's parity vector must give back the
    record's smallest element, with denominator exactly k.
    """
    v = record.parity_vector
    return periodic_point(v) == Rational2(record.min_numerator, record.k) and (
        denominator_of(v) == record.k
    )


# ---------------------------------------------------------------------------
# Searches
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DenominatorReport:
    """
    Snapshot of a depth-N search of D_k.

    attractors are sorted by min_numerator; basin_sizes[i] counts the
    surveyed j whose orbit entered attractors[i].
    """

    k: int
    depth: int
    attractors: Tuple[AttractorRecord, ...]
    undecided_numerators: Tuple[int, ...]
    step_cap: int
    basin_sizes: Tuple[int, ...] = ()

    @property
    def attractor_count(self) -> int:
        return len(self.attractors)

    @property
    def decided(self) -> bool:
        return not self.undecided_numerators

    @property
    def single_attractor(self) -> bool:
        """Exactly one attractor seen and every surveyed orbit decided."""
        return self.attractor_count == 1 and self.decided


class DenominatorSearch:
    """Resumable depth search of D_k."""

    def __init__(self, k: int, step_cap: int = DEFAULT_STEP_CAP):
        require_admissible(k)
        if step_cap < 1:
            raise ValueError(f"step_cap must be >= 1, got {step_cap}")
        self.k = k
        self.step_cap = step_cap
        self.depth = 0
        # numerator -> index into _attractors, for every value known to
        # lead into an attractor
        self._basin: Dict[int, int] = {}
        self._attractors: List[AttractorRecord] = []
        self._basin_sizes: List[int] = []
        self._undecided: List[int] = []

    def extend(self, depth: int) -> "DenominatorSearch":
        """Survey every coprime j with self.depth < j <= depth."""
        if depth < 1:
            raise ValueError(f"depth must be >= 1, got {depth}")
        k = self.k
        for j in range(self.depth + 1, depth + 1):
            if math.gcd(j, k) == 1:
                self._survey(j)
        self.depth = max(self.depth, depth)
        return self

    def _survey(self, j: int) -> None:
        k = self.k
        basin = self._basin
        path: List[int] = []
        position: Dict[int, int] = {}
        current = j
        steps = 0
        while True:
            index = basin.get(current)
            if index is not None:
                break
            start = position.get(current)
            if start is not None:
                index = self._register(path[start:])
                break
            if steps == self.step_cap:
                self._undecided.append(j)
                logger.warning(
                    "Orbit of %d/%d undecided after %d steps", j, k, self.step_cap
                )
                return
            position[current] = len(path)
            path.append(current)
            current = t_map_numerator(current, k)
            steps += 1

        for value in path:
            basin[value] = index
        self._basin_sizes[index] += 1

    def _register(self, cycle: List[int]) -> int:
        record = AttractorRecord.from_cycle(self.k, cycle)
        self._attractors.append(record)
        self._basin_sizes.append(0)
        logger.debug(
            "New attractor for k=%d: min=%d lambda=%d omega=%d",
            self.k,
            record.min_numerator,
            record.lam,
            record.omega,
        )
        return len(self._attractors) - 1

    @property
    def undecided(self) -> Tuple[int, ...]:
        return tuple(self._undecided)

    def report(self) -> DenominatorReport:
        order = sorted(
            range(len(self._attractors)),
            key=lambda i: self._attractors[i].min_numerator,
        )
        return DenominatorReport(
            k=self.k,
            depth=self.depth,
            attractors=tuple(self._attractors[i] for i in order),
            undecided_numerators=tuple(self._undecided),
            step_cap=self.step_cap,
            basin_sizes=tuple(self._basin_sizes[i] for i in order),
        )


def search_denominator(
    k: int, depth: int, step_cap: int = DEFAULT_STEP_CAP
) -> DenominatorReport:
    """Depth-`depth` search of D_k."""
    report = DenominatorSearch(k, step_cap).extend(depth).report()
    logger.info(
        "Searched k=%d depth=%d: %d attractor(s), %d undecided",
        k,
        depth,
        report.attractor_count,
        len(report.undecided_numerators),
    )
    return report


def deep_verify(
    k: int, depth: int, step_cap: int = DEFAULT_STEP_CAP
) -> Tuple[bool, DenominatorReport]:
    """True iff the depth search finds exactly one attractor and no undecided orbit."""
    report = search_denominator(k, depth, step_cap)
    if not report.single_attractor:
        logger.warning(
            "k=%d depth=%d: %d attractor(s), %d undecided orbit(s)",
            k,
            depth,
            report.attractor_count,
            len(report.undecided_numerators),
        )
    return report.single_attractor, report


def _search_task(args: Tuple[int, int, int]) -> DenominatorReport:
    k, depth, step_cap = args
    return DenominatorSearch(k, step_cap).extend(depth).report()


def _run_tasks(func, tasks: Sequence, jobs: int) -> list:
    """Map func over tasks, in worker processes when jobs > 1. Order is kept."""
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if jobs == 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    chunksize = max(1, len(tasks) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, tasks, chunksize=chunksize))


def sweep(
    k_values: Iterable[int],
    depth: int,
    step_cap: int = DEFAULT_STEP_CAP,
    jobs: int = 1,
) -> List[DenominatorReport]:
    """Depth searches for several denominators, sorted by k."""
    ks = sorted(set(k_values))
    for k in ks:
        require_admissible(k)
    reports = _run_tasks(_search_task, [(k, depth, step_cap) for k in ks], jobs)
    undecided = sum(len(r.undecided_numerators) for r in reports)
    logger.info(
        "Swept %d denominator(s) at depth %d (%d undecided orbit(s))",
        len(reports),
        depth,
        undecided,
    )
    if undecided:
        logger.error("Sweep finished with %d undecided orbit(s)", undecided)
    return sorted(reports, key=lambda r: r.k)


# ---------------------------------------------------------------------------
# Single-attractor table
# ---------------------------------------------------------------------------


class ATablePoint(NamedTuple):
    depth: int
    a: int


@dataclass(frozen=True)
class ATableResult:
    points: Tuple[ATablePoint, ...]
    surveyed: int
    undecided_denominators: Tuple[int, ...] = field(default_factory=tuple)


def _a_table_task(args: Tuple[int, Tuple[int, ...], int]) -> Tuple[int, Tuple[bool, ...], bool]:
    k, depths, step_cap = args
    search = DenominatorSearch(k, step_cap)
    single = []
    for depth in depths:
        single.append(search.extend(depth).report().single_attractor)
    return k, tuple(single), bool(search.undecided)


def a_table_result(
    k_max: int,
    depths: Sequence[int],
    step_cap: int = DEFAULT_STEP_CAP,
    jobs: int = 1,
) -> ATableResult:
    """
    For each depth N, the number of admissible k <= k_max whose depth-N
    search shows exactly one attractor and no undecided orbit.
    """
    depths = tuple(depths)
    if not depths:
        raise ValueError("At least one depth is required")
    if any(d < 1 for d in depths) or any(b <= a for a, b in zip(depths, depths[1:])):
        raise ValueError(f"Depths must be positive and strictly increasing: {depths}")
    ks = admissible_denominators(k_max)
    results = _run_tasks(_a_table_task, [(k, depths, step_cap) for k in ks], jobs)

    counts = [0] * len(depths)
    undecided = []
    for k, single, had_undecided in sorted(results):
        for i, flag in enumerate(single):
            counts[i] += flag
        if had_undecided:
            undecided.append(k)
    if undecided:
        logger.error(
            "Denominators with undecided orbits excluded from A(N): %s", undecided
        )
    points = tuple(ATablePoint(depth, a) for depth, a in zip(depths, counts))
    for point in points:
        logger.info("A(%d) = %d over %d denominators", point.depth, point.a, len(ks))
    return ATableResult(points=points, surveyed=len(ks), undecided_denominators=tuple(undecided))


def a_table(
    k_max: int,
    depths: Sequence[int],
    step_cap: int = DEFAULT_STEP_CAP,
    jobs: int = 1,
) -> List[ATablePoint]:
    return list(a_table_result(k_max, depths, step_cap, jobs).points)


def published_a_points() -> List[ATablePoint]:
    return [ATablePoint(depth, a) for depth, a in PUBLISHED_A_TABLE]


def records_of(reports: Iterable[DenominatorReport]) -> List[AttractorRecord]:
    """All attractors of several reports, ordered by (k, min_numerator)."""
    return sorted(
        (record for report in reports for record in report.attractors),
        key=lambda r: r.sort_key,
    )

