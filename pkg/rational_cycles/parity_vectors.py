"""
0-1 vectors and the periodic points they determine.

Given a 0-1 vector v = (v_0, ..., v_{n-1}) there is exactly one x in Q[(2)]
that is periodic of period n under T and whose parity sequence starts with
v. With

    λ = n,   ω = v_0 + ... + v_{n-1},
    ρ = Σ_j v_j · 3^(v_{j+1} + ... + v_{n-1}) · 2^j,

that point is x = ρ / (2^λ − 3^ω).

This module builds those points, enumerates vectors (optionally only the
primitive ones, i.e. those that are not a repetition of a shorter block),
and evaluates the Möbius counting identities relating vectors to
irreducible cycles.
"""

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple

from rational_cycles.rational_core import Rational2, iterate, parity_sequence, t_map

logger = logging.getLogger(__name__)

# Exhaustive 2^n enumeration is refused above this length.
MAX_EXHAUSTIVE_LENGTH = 28


@dataclass(frozen=True, order=True)
class ParityVector:
    """An ordered tuple of bits, length >= 1."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(self.bits)
        if not bits:
            raise ValueError("A parity vector needs at least one entry")
        if any(b not in (0, 1) or isinstance(b, bool) for b in bits):
            raise ValueError(f"Parity vector entries must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "ParityVector":
        """Build a vector from a literal such as "1100"."""
        literal = (text or "").strip()
        if not literal:
            raise ValueError("Empty parity vector literal")
        bad = sorted(set(literal) - {"0", "1"})
        if bad:
            raise ValueError(
                f"Parity vector literal {text!r} contains non-binary characters {bad}"
            )
        return cls(tuple(int(c) for c in literal))

    @classmethod
    def from_cycle(cls, cycle: Iterable) -> "ParityVector":
        """The parity vector v(c) of a cycle given by its elements (or numerators)."""
        return cls(tuple(int(getattr(x, "numerator", x)) & 1 for x in cycle))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


@dataclass(frozen=True)
class CycleInvariants:
    lam: int
    omega: int
    rho: int
    big_j: int


# ---------------------------------------------------------------------------
# Closed form
# ---------------------------------------------------------------------------


def invariants(v: ParityVector) -> CycleInvariants:
    """
    λ, ω, ρ and J = 2^λ − 3^ω for v.

    ρ is accumulated right to left so the power of three for each suffix is
    a running product rather than a fresh exponentiation.
    """
    bits = v.bits
    rho = 0
    pow3 = 1
    for j in range(len(bits) - 1, -1, -1):
        if bits[j]:
            rho += pow3 << j
            pow3 *= 3
    lam = len(bits)
    omega = sum(bits)
    return CycleInvariants(lam=lam, omega=omega, rho=rho, big_j=(1 << lam) - pow3)


def periodic_point(v: ParityVector) -> Rational2:
    """The unique x of period λ under T whose first λ parities are v."""
    inv = invariants(v)
    # J is odd and never zero, so the quotient always lies in Q[(2)].
    return Rational2(inv.rho, inv.big_j)


def denominator_of(v: ParityVector) -> int:
    """|J| / gcd(ρ, |J|): the denominator of x(v) in lowest terms."""
    inv = invariants(v)
    size = abs(inv.big_j)
    return size // math.gcd(inv.rho, size)


def periodic_cycle(v: ParityVector) -> Tuple[Rational2, ...]:
    """(x, T x, ..., T^(λ-1) x) for x = x(v)."""
    x = periodic_point(v)
    cycle = [x]
    for _ in range(len(v) - 1):
        cycle.append(t_map(cycle[-1]))
    return tuple(cycle)


def verify_closed_form(v: ParityVector) -> bool:
    """Check T^λ(x) == x and that the parity sequence of x starts with v."""
    x = periodic_point(v)
    n = len(v)
    ok = parity_sequence(x, n) == v.bits and iterate(x, n) == x
    if not ok:
        logger.error("Closed form failed for v=%s (x=%s)", v, x)
    return ok


# ---------------------------------------------------------------------------
# Rotations and primitivity
# ---------------------------------------------------------------------------


def rotations(v: ParityVector) -> List[ParityVector]:
    """All λ cyclic shifts of v, shift 0 first."""
    bits = v.bits
    return [ParityVector(bits[s:] + bits[:s]) for s in range(len(bits))]


def divisors(n: int) -> List[int]:
    """Sorted positive divisors of n."""
    if n < 1:
        raise ValueError(f"divisors() needs a positive integer, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def minimal_period(v: ParityVector) -> int:
    """Smallest p such that v is its first p bits repeated."""
    bits = v.bits
    n = len(bits)
    for p in divisors(n):
        if bits == bits[:p] * (n // p):
            return p
    return n


def is_primitive(v: ParityVector) -> bool:
    return minimal_period(v) == len(v)


def necklace_representative(v: ParityVector) -> ParityVector:
    """Lexicographically smallest rotation; equal for vectors of one cycle."""
    return min(rotations(v))


def enumerate_vectors(n: int, primitive_only: bool = False) -> Iterator[ParityVector]:
    """Every 0-1 vector of length n in lexicographic order."""
    if n < 1:
        raise ValueError(f"Vector length must be >= 1, got {n}")
    for bits in itertools.product((0, 1), repeat=n):
        v = ParityVector(bits)
        if primitive_only and not is_primitive(v):
            continue
        yield v


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


def mobius(d: int) -> int:
    """Möbius function by trial division."""
    if d < 1:
        raise ValueError(f"mobius() needs a positive integer, got {d}")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def aperiodic_count(n: int) -> int:
    """Σ_{d|n} μ(d) 2^(n/d): the number of primitive 0-1 vectors of length n."""
    return sum(mobius(d) << (n // d) for d in divisors(n))


def irreducible_count(n: int) -> int:
    """I(n) = (1/n) Σ_{d|n} μ(d) 2^(n/d), the number of irreducible cycles of length n."""
    total = aperiodic_count(n)
    assert total % n == 0, (n, total)
    return total // n


def _require_exhaustive(n: int) -> None:
    if not 1 <= n <= MAX_EXHAUSTIVE_LENGTH:
        raise ValueError(
            f"Exhaustive enumeration needs 1 <= n <= {MAX_EXHAUSTIVE_LENGTH}, got {n}"
        )


def denominator_census(n: int) -> Dict[int, int]:
    """
    For every k that occurs, the number of primitive vectors of
    length n whose periodic point has denominator k. Keys are sorted.
    """
    _require_exhaustive(n)
    counts: Counter = Counter(denominator_of(v) for v in enumerate_vectors(n, True))
    for k, count in counts.items():
        assert count % n == 0, (n, k, count)
    logger.debug("denominator_census(%d): %d denominators", n, len(counts))
    return dict(sorted(counts.items()))


def positive_denominator_census(n: int) -> Dict[int, int]:
    """
    Like denominator_census, restricted to vectors whose point is a positive fraction.

    Those are exactly the length-n cycles that live inside some D_k, so
    positive_denominator_census(n)[k] / n is what a deep enough search of D_k finds.
    """
    _require_exhaustive(n)
    counts: Counter = Counter()
    for v in enumerate_vectors(n, True):
        inv = invariants(v)
        if inv.rho == 0 or inv.big_j < 0:
            continue
        counts[inv.big_j // math.gcd(inv.rho, inv.big_j)] += 1
    return dict(sorted(counts.items()))


def verify_counting_identity(n: int) -> bool:
    """Total of denominator_census(n) == Σ_{d|n} μ(d) 2^(n/d)."""
    observed = sum(denominator_census(n).values())
    expected = aperiodic_count(n)
    if observed != expected:
        logger.error("Counting identity failed for n=%d: %d != %d", n, observed, expected)
        return False
    logger.info("Counting identity holds for n=%d (total %d)", n, observed)
    return True


# ---------------------------------------------------------------------------
# Vectors with prescribed invariants
# ---------------------------------------------------------------------------


def vectors_with_invariants(lam: int, omega: int, k: int) -> List[ParityVector]:
    """
    Primitive vectors with λ = lam, ω = omega whose point has denominator k,
    sorted lexicographically.

    With J = 2^lam − 3^omega = d·k these are the vectors with gcd(ρ, J) = d.
    """
    if lam < 1 or not 0 <= omega <= lam:
        raise ValueError(f"Need lam >= 1 and 0 <= omega <= lam, got ({lam}, {omega})")
    big_j = (1 << lam) - 3**omega
    if k < 1 or big_j % k != 0:
        raise ValueError(f"k={k} does not divide 2^{lam} - 3^{omega} = {big_j}")
    found = []
    for ones in itertools.combinations(range(lam), omega):
        bits = [0] * lam
        for i in ones:
            bits[i] = 1
        v = ParityVector(tuple(bits))
        if is_primitive(v) and denominator_of(v) == k:
            found.append(v)
    return sorted(found)


def cycle_classes(vectors: Iterable[ParityVector]) -> List[Tuple[ParityVector, ...]]:
    """Group vectors into rotation classes (one class per cycle)."""
    classes: Dict[ParityVector, List[ParityVector]] = {}
    for v in vectors:
        classes.setdefault(necklace_representative(v), []).append(v)
    return [tuple(sorted(members)) for _, members in sorted(classes.items())]


@dataclass(frozen=True)
class ScalingClass:
    """Vectors with invariants (λ, ω) and gcd(ρ, J) = d, grouped into cycles: d = |J| / k."""

    lam: int
    omega: int
    k: int
    d: int
    cycles: Tuple[Tuple[ParityVector, ...], ...]

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)


def scaling_class(lam: int, omega: int, k: int) -> ScalingClass:
    vectors = vectors_with_invariants(lam, omega, k)
    big_j = (1 << lam) - 3**omega
    return ScalingClass(
        lam=lam,
        omega=omega,
        k=k,
        d=abs(big_j) // k,
        cycles=tuple(cycle_classes(vectors)),
    )
