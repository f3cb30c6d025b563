"""
Exact arithmetic on Q[(2)] and iteration of the 3x+1 map.

Q[(2)] is the ring of fractions j/k in lowest terms with k odd. A fraction
is even or odd according to the parity of its numerator, and

    T(x) = x/2          for x even
    T(x) = (3x + 1)/2   for x odd

maps Q[(2)] into itself. For k ≡ 1 or 5 (mod 6) it also preserves the set
D_k of positive fractions with denominator k; the census code iterates T
on numerators alone in that case (see t_map_numerator).

All values are immutable. Every function here is pure.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

logger = logging.getLogger(__name__)

DEFAULT_STEP_CAP = 100_000

_RATIONAL_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Rational2(Fraction):
    """
    A fraction with odd positive denominator, always in lowest terms.

    Construction accepts anything Fraction accepts; the sign ends up in the
    numerator and 0 is stored as 0/1. Arithmetic operators return plain
    Fractions, so wrap results with Rational2(...) where membership in
    Q[(2)] matters.
    """

    __slots__ = ()

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self.denominator % 2 == 0:
            raise ValueError(
                f"{self.numerator}/{self.denominator} is not in Q[(2)]: "
                "denominator must be odd"
            )
        return self

    def __repr__(self) -> str:
        return f"Rational2({self.numerator}, {self.denominator})"

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


RationalLike = Union[Rational2, Fraction, int]


def as_rational2(x: RationalLike) -> Rational2:
    """Coerce an int or Fraction into Q[(2)]."""
    if isinstance(x, Rational2):
        return x
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"Expected an int or Fraction, got {type(x).__name__}")
    return Rational2(x)


def parse_rational(text: str) -> Rational2:
    """
    Parse a literal "j/k" or "j" into a Rational2.

    Raises ValueError for malformed text, a zero denominator, or a
    denominator that stays even after reduction to lowest terms.
    """
    match = _RATIONAL_LITERAL.match(text or "")
    if match is None:
        raise ValueError(f"Cannot parse {text!r} as a rational 'j/k'")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"Cannot parse {text!r}: zero denominator")
    return Rational2(numerator, denominator)


# ---------------------------------------------------------------------------
# The map
# ---------------------------------------------------------------------------


def parity(x: RationalLike) -> int:
    """1 if the numerator of x (in lowest terms) is odd, else 0."""
    return as_rational2(x).numerator & 1


def t_map(x: RationalLike) -> Rational2:
    """One application of T."""
    x = as_rational2(x)
    j, k = x.numerator, x.denominator
    if j & 1:
        # 3j + k is even because both j and k are odd.
        return Rational2((3 * j + k) // 2, k)
    return Rational2(j // 2, k)


def t_map_numerator(j: int, k: int) -> int:
    """
    T acting on the numerator of j/k, for gcd(j, k) = 1 and 3 ∤ k.

    The denominator is left unchanged under those conditions, so iterating
    this function is iterating T on D_k without building fractions.
    """
    if j & 1:
        return (3 * j + k) >> 1
    return j >> 1


def iterate(x: RationalLike, n: int) -> Rational2:
    """T^n(x)."""
    if n < 0:
        raise ValueError(f"Iteration count must be non-negative, got {n}")
    x = as_rational2(x)
    for _ in range(n):
        x = t_map(x)
    return x


def parity_sequence(x: RationalLike, n: int) -> Tuple[int, ...]:
    """(parity(x), parity(T x), ..., parity(T^(n-1) x))."""
    if n < 1:
        raise ValueError(f"Parity sequence length must be >= 1, got {n}")
    x = as_rational2(x)
    bits: List[int] = []
    for _ in range(n):
        bits.append(x.numerator & 1)
        x = t_map(x)
    return tuple(bits)


# ---------------------------------------------------------------------------
# Orbits
# ---------------------------------------------------------------------------


def canonical_rotation(cycle: Iterable) -> tuple:
    """Rotate a cycle so it starts at its smallest element."""
    items = tuple(cycle)
    if not items:
        return items
    start = min(range(len(items)), key=items.__getitem__)
    return items[start:] + items[:start]


@dataclass(frozen=True)
class OrbitOutcome:
    """
    Result of iterating T from a starting value.

    Decided outcomes carry the pre-periodic tail and the cycle in canonical
    rotation. Undecided outcomes (no revisit within the step cap) carry the
    trajectory seen so far in `tail`, an empty `cycle`, and
    steps_used == the step cap.
    """

    tail: Tuple[Rational2, ...]
    cycle: Tuple[Rational2, ...]
    steps_used: int
    decided: bool

    @property
    def cycle_length(self) -> int:
        return len(self.cycle)

    @property
    def odd_count(self) -> int:
        return sum(x.numerator & 1 for x in self.cycle)

    @property
    def cycle_parity(self) -> Tuple[int, ...]:
        return tuple(x.numerator & 1 for x in self.cycle)


def orbit(x: RationalLike, max_steps: int = DEFAULT_STEP_CAP) -> OrbitOutcome:
    """
    Iterate T from x until a value repeats or max_steps applications of T
    have been made.

    Cycle detection keeps every visited value in a dict (value -> index);
    the first revisited value marks the start of the cycle.
    """
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    current = as_rational2(x)
    path: List[Rational2] = [current]
    seen = {current: 0}
    for step in range(1, max_steps + 1):
        current = t_map(current)
        start = seen.get(current)
        if start is not None:
            return OrbitOutcome(
                tail=tuple(path[:start]),
                cycle=canonical_rotation(path[start:]),
                steps_used=step,
                decided=True,
            )
        seen[current] = len(path)
        path.append(current)

    logger.warning("Orbit of %s undecided after %d steps", path[0], max_steps)
    return OrbitOutcome(tail=tuple(path), cycle=(), steps_used=max_steps, decided=False)
