"""
Scaling, repetition and covariance among the attractors of one D_k.

  scaling      two attractors c1, c2 with the same λ/ω ratio and
               λ1 < λ2. Pairs where λ2/λ1 = ω2/ω1 = δ is an integer are
               listed in scaling_pairs; equal-ratio pairs whose length
               ratio is not an integer go to fractional_pairs. A
               denominator shows scaling if either list is non-empty.
  repetition   two or more attractors with identical (λ, ω)
  covariance   λ and ω increasing together; an exception is a pair with
               (λ1 − λ2)(ω1 − ω2) <= 0 and (λ1, ω1) != (λ2, ω2)

All comparisons use integer arithmetic. Output ordering follows
min_numerator so reports are reproducible.

explain_phenomena() ties each detection back to vector sets: every
rotation of an attractor's parity vector has invariants (λ, ω) and
gcd(ρ, J) = d with d = |2^λ − 3^ω| / k. Several cycles in one set give
repetition; non-empty sets at (λ, ω) and (δλ, δω) for the same k give
scaling.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from rational_cycles.census import (
    AttractorRecord,
    DenominatorReport,
    admissible_denominators,
    sweep,
)
from rational_cycles.parity_vectors import denominator_of, rotations, vectors_with_invariants
from rational_cycles.rational_core import DEFAULT_STEP_CAP

logger = logging.getLogger(__name__)

# Full enumeration of a vector set is skipped when C(λ, ω) exceeds this.
ENUMERATION_BUDGET = 200_000

AttractorPair = Tuple[AttractorRecord, AttractorRecord]


@dataclass(frozen=True)
class PhenomenaReport:
    k: int
    scaling_pairs: Tuple[AttractorPair, ...]
    repetition_groups: Tuple[Tuple[AttractorRecord, ...], ...]
    covariance_exceptions: Tuple[AttractorPair, ...]
    fractional_pairs: Tuple[AttractorPair, ...] = ()

    @property
    def has_scaling(self) -> bool:
        return bool(self.scaling_pairs or self.fractional_pairs)

    @property
    def has_repetition(self) -> bool:
        return bool(self.repetition_groups)


def shares_ratio(c1: AttractorRecord, c2: AttractorRecord) -> bool:
    """True if c2 is longer than c1 and λ/ω is the same for both."""
    if c1.omega == 0 or c2.omega == 0:
        return False
    return c1.lam < c2.lam and c1.lam * c2.omega == c2.lam * c1.omega


def scaling_factor(c1: AttractorRecord, c2: AttractorRecord) -> Optional[int]:
    """δ if c2 is c1 scaled by an integer δ >= 2, else None."""
    if not shares_ratio(c1, c2):
        return None
    if c2.lam % c1.lam or c2.omega % c1.omega:
        return None
    delta = c2.lam // c1.lam
    if c2.omega != delta * c1.omega:
        return None
    return delta


def is_covariance_exception(c1: AttractorRecord, c2: AttractorRecord) -> bool:
    if (c1.lam, c1.omega) == (c2.lam, c2.omega):
        return False
    return (c1.lam - c2.lam) * (c1.omega - c2.omega) <= 0


def _by_min_numerators(pairs: List[AttractorPair]) -> Tuple[AttractorPair, ...]:
    return tuple(sorted(pairs, key=lambda pair: (pair[0].min_numerator, pair[1].min_numerator)))


def detect_phenomena(report: DenominatorReport) -> PhenomenaReport:
    if not report.attractors:
        raise ValueError(f"Report for k={report.k} has no attractors")
    attractors = sorted(report.attractors, key=lambda r: r.min_numerator)

    scaling, fractional = [], []
    for c1, c2 in itertools.permutations(attractors, 2):
        if not shares_ratio(c1, c2):
            continue
        if scaling_factor(c1, c2) is None:
            fractional.append((c1, c2))
        else:
            scaling.append((c1, c2))
    if fractional:
        logger.debug("k=%d: %d equal-ratio pair(s) with non-integer δ", report.k, len(fractional))

    groups: Dict[Tuple[int, int], List[AttractorRecord]] = {}
    for record in attractors:
        groups.setdefault((record.lam, record.omega), []).append(record)
    repetition = sorted(
        (tuple(members) for members in groups.values() if len(members) >= 2),
        key=lambda members: members[0].min_numerator,
    )

    exceptions = [
        (c1, c2)
        for c1, c2 in itertools.combinations(attractors, 2)
        if is_covariance_exception(c1, c2)
    ]

    return PhenomenaReport(
        k=report.k,
        scaling_pairs=_by_min_numerators(scaling),
        repetition_groups=tuple(repetition),
        covariance_exceptions=tuple(exceptions),
        fractional_pairs=_by_min_numerators(fractional),
    )


# ---------------------------------------------------------------------------
# Census over many denominators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhenomenaCensus:
    """
    Phenomena counted two ways: by denominator (scaling_count,
    repetition_count, both_count) and by raw pairs/groups
    (scaling_pairs_total, fractional_pairs_total, repetition_groups_total).
    """

    k_max: int
    depth: int
    surveyed: int
    scaling_count: int
    repetition_count: int
    both_count: int
    scaling_pairs_total: int
    repetition_groups_total: int
    covariance_exception_count: int
    scaling_denominators: Tuple[int, ...]
    repetition_denominators: Tuple[int, ...]
    fractional_pairs_total: int = 0

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.scaling_count, self.repetition_count, self.both_count)


def phenomena_census(
    k_max: int,
    depth: int,
    step_cap: int = DEFAULT_STEP_CAP,
    jobs: int = 1,
) -> PhenomenaCensus:
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    reports = sweep(admissible_denominators(k_max), depth, step_cap, jobs)
    scaling_ks, repetition_ks = [], []
    pairs_total = fractional_total = groups_total = exceptions_total = 0
    for report in reports:
        if not report.attractors:
            continue
        found = detect_phenomena(report)
        pairs_total += len(found.scaling_pairs)
        fractional_total += len(found.fractional_pairs)
        groups_total += len(found.repetition_groups)
        if found.covariance_exceptions:
            exceptions_total += 1
        if found.has_scaling:
            scaling_ks.append(report.k)
        if found.has_repetition:
            repetition_ks.append(report.k)
    both = len(set(scaling_ks) & set(repetition_ks))
    census = PhenomenaCensus(
        k_max=k_max,
        depth=depth,
        surveyed=len(reports),
        scaling_count=len(scaling_ks),
        repetition_count=len(repetition_ks),
        both_count=both,
        scaling_pairs_total=pairs_total,
        repetition_groups_total=groups_total,
        covariance_exception_count=exceptions_total,
        scaling_denominators=tuple(scaling_ks),
        repetition_denominators=tuple(repetition_ks),
        fractional_pairs_total=fractional_total,
    )
    logger.info(
        "Phenomena k<=%d depth=%d: scaling=%d repetition=%d both=%d "
        "(pairs=%d fractional=%d groups=%d)",
        k_max,
        depth,
        census.scaling_count,
        census.repetition_count,
        census.both_count,
        pairs_total,
        fractional_total,
        groups_total,
    )
    return census


# ---------------------------------------------------------------------------
# Explanation through vector sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VectorSetWitness:
    """
    Evidence about the (λ, ω, d) vector set for one denominator.

    witnessed counts the rotations of observed parity vectors that land in
    the set. enumerated is the full size of the set when it was small
    enough to enumerate, else None.
    """

    lam: int
    omega: int
    k: int
    d: int
    witnessed: int
    enumerated: Optional[int]

    @property
    def non_empty(self) -> bool:
        return self.witnessed > 0 or bool(self.enumerated)


@dataclass(frozen=True)
class ScalingExplanation:
    pair: AttractorPair
    delta: Fraction
    short: VectorSetWitness
    long: VectorSetWitness

    @property
    def integral(self) -> bool:
        return self.delta.denominator == 1


@dataclass(frozen=True)
class PhenomenaExplanation:
    k: int
    repetition: Tuple[VectorSetWitness, ...]
    scaling: Tuple[ScalingExplanation, ...]


def _witness(members: Tuple[AttractorRecord, ...], budget: int) -> VectorSetWitness:
    first = members[0]
    k, lam, omega = first.k, first.lam, first.omega
    witnessed = sum(
        1
        for record in members
        for v in rotations(record.parity_vector)
        if denominator_of(v) == k
    )
    enumerated = None
    if math.comb(lam, omega) <= budget:
        enumerated = len(vectors_with_invariants(lam, omega, k))
    else:
        logger.debug(
            "Skipping enumeration of vectors (%d,%d) for k=%d: C(%d,%d) too large",
            lam,
            omega,
            k,
            lam,
            omega,
        )
    return VectorSetWitness(
        lam=lam,
        omega=omega,
        k=k,
        d=abs((1 << lam) - 3**omega) // k,
        witnessed=witnessed,
        enumerated=enumerated,
    )


def explain_phenomena(
    found: PhenomenaReport, enumeration_budget: int = ENUMERATION_BUDGET
) -> PhenomenaExplanation:
    """
    Vector-set witnesses for every repetition group and every equal-ratio
    pair (integral ones first, then fractional ones).
    """
    repetition = tuple(_witness(group, enumeration_budget) for group in found.repetition_groups)
    scaling = tuple(
        ScalingExplanation(
            pair=(c1, c2),
            delta=Fraction(c2.lam, c1.lam),
            short=_witness((c1,), enumeration_budget),
            long=_witness((c2,), enumeration_budget),
        )
        for c1, c2 in found.scaling_pairs + found.fractional_pairs
    )
    return PhenomenaExplanation(k=found.k, repetition=repetition, scaling=scaling)
