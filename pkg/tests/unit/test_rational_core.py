"""
Unit tests for rational_core: Q[(2)] membership, the map T, and orbits.
"""

import math
from fractions import Fraction

import pytest

from rational_cycles.rational_core import (
    Rational2,
    as_rational2,
    canonical_rotation,
    iterate,
    orbit,
    parity,
    parity_sequence,
    parse_rational,
    t_map,
    t_map_numerator,
)
from tests.helpers import K19_CYCLE, K7_CYCLE


@pytest.mark.unit
class TestRational2:
    """Rational2 normalisation and coercion."""

    def test_reduces_to_lowest_terms(self):
        x = Rational2(10, 14)
        assert (x.numerator, x.denominator) == (5, 7)

    def test_sign_moves_to_numerator(self):
        x = Rational2(5, -7)
        assert (x.numerator, x.denominator) == (-5, 7)

    def test_zero_is_zero_over_one(self):
        x = Rational2(0, 7)
        assert (x.numerator, x.denominator) == (0, 1)

    def test_even_denominator_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            Rational2(1, 4)

    def test_even_denominator_that_reduces_away_is_accepted(self):
        assert Rational2(2, 6) == Fraction(1, 3)

    def test_str_and_repr(self):
        assert str(Rational2(5, 7)) == "5/7"
        assert str(Rational2(3)) == "3"
        assert repr(Rational2(5, 7)) == "Rational2(5, 7)"

    def test_as_rational2_accepts_int_and_fraction(self):
        assert as_rational2(3) == Rational2(3)
        assert as_rational2(Fraction(5, 7)) == Rational2(5, 7)

    @pytest.mark.parametrize("bad", ["5/7", 0.5, True, None])
    def test_as_rational2_rejects_other_types(self, bad):
        with pytest.raises(TypeError):
            as_rational2(bad)


@pytest.mark.unit
class TestParseRational:
    """Tests for parse_rational()."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("5/7", Rational2(5, 7)),
            ("3", Rational2(3)),
            ("-17", Rational2(-17)),
            (" 5 / 7 ", Rational2(5, 7)),
            ("+10/14", Rational2(5, 7)),
        ],
    )
    def test_valid_literals(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["", "abc", "5/", "/7", "5/7/9", "1.5", "5/-7"])
    def test_malformed_literals(self, text):
        with pytest.raises(ValueError, match="Cannot parse"):
            parse_rational(text)

    def test_zero_denominator(self):
        with pytest.raises(ValueError, match="zero denominator"):
            parse_rational("1/0")

    def test_even_denominator_after_reduction(self):
        with pytest.raises(ValueError, match="odd"):
            parse_rational("3/6")


@pytest.mark.unit
class TestTMap:
    """Tests for the map T and its numerator form."""

    @pytest.mark.parametrize(
        "x, expected",
        [
            (Rational2(5, 7), 1),
            (Rational2(20, 7), 0),
            (Rational2(0), 0),
            (Rational2(-1), 1),
        ],
    )
    def test_parity(self, x, expected):
        assert parity(x) == expected

    @pytest.mark.parametrize(
        "x, expected",
        [
            (Rational2(5, 7), Rational2(11, 7)),
            (Rational2(20, 7), Rational2(10, 7)),
            (Rational2(1), Rational2(2)),
            (Rational2(2), Rational2(1)),
            (Rational2(-1), Rational2(-1)),
            (Rational2(0), Rational2(0)),
        ],
    )
    def test_t_map_values(self, x, expected):
        assert t_map(x) == expected

    def test_denominator_preserved_for_admissible_k(self, rng):
        for _ in range(10_000):
            k = rng.choice([5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37])
            j = rng.randint(1, 10**6)
            if math.gcd(j, k) != 1:
                continue
            image = t_map(Rational2(j, k))
            assert image.denominator == k
            assert image > 0

    def test_numerator_map_agrees_with_t_map(self, rng):
        for _ in range(2_000):
            k = rng.choice([1, 5, 7, 11, 13, 2021])
            j = rng.randint(1, 10**9)
            if math.gcd(j, k) != 1:
                continue
            assert Rational2(t_map_numerator(j, k), k) == t_map(Rational2(j, k))

    def test_iterate(self):
        assert iterate(Rational2(5, 7), 0) == Rational2(5, 7)
        assert iterate(Rational2(5, 7), 4) == Rational2(5, 7)
        assert iterate(Rational2(5, 7), 2) == Rational2(20, 7)

    def test_iterate_rejects_negative_count(self):
        with pytest.raises(ValueError):
            iterate(Rational2(1), -1)


@pytest.mark.unit
class TestParitySequence:
    """Tests for parity_sequence()."""

    @pytest.mark.parametrize(
        "x, n, expected",
        [
            (Rational2(5, 7), 4, (1, 1, 0, 0)),
            (Rational2(1), 2, (1, 0)),
            (Rational2(0), 3, (0, 0, 0)),
            (Rational2(-1), 3, (1, 1, 1)),
        ],
    )
    def test_values(self, x, n, expected):
        assert parity_sequence(x, n) == expected

    def test_length_must_be_positive(self):
        with pytest.raises(ValueError):
            parity_sequence(Rational2(1), 0)


@pytest.mark.unit
class TestOrbit:
    """Tests for orbit() and canonical_rotation()."""

    def test_canonical_rotation(self):
        assert canonical_rotation((20, 10, 5, 11)) == (5, 11, 20, 10)
        assert canonical_rotation(()) == ()

    def test_start_on_cycle_has_empty_tail(self):
        outcome = orbit(Rational2(5, 7))
        assert outcome.decided
        assert outcome.tail == ()
        assert tuple(x.numerator for x in outcome.cycle) == K7_CYCLE
        assert all(x.denominator == 7 for x in outcome.cycle)
        assert (outcome.cycle_length, outcome.odd_count) == (4, 2)
        assert outcome.cycle_parity == (1, 1, 0, 0)

    def test_integer_orbit_reaches_trivial_cycle(self):
        outcome = orbit(3)
        assert outcome.decided
        assert outcome.tail == (Rational2(3), Rational2(5), Rational2(8), Rational2(4))
        assert outcome.cycle == (Rational2(1), Rational2(2))

    def test_negative_cycle(self):
        outcome = orbit(-5)
        assert outcome.cycle == (Rational2(-10), Rational2(-5), Rational2(-7))
        assert outcome.cycle_length == 3

    def test_fixed_points(self):
        assert orbit(0).cycle == (Rational2(0),)
        assert orbit(-1).cycle == (Rational2(-1),)

    def test_one_thirteenth_enters_length_four_cycle(self):
        outcome = orbit(Rational2(1, 13))
        assert tuple(x.numerator for x in outcome.cycle) == (1, 8, 4, 2)

    def test_k19_cycle(self):
        outcome = orbit(Rational2(5, 19))
        assert tuple(x.numerator for x in outcome.cycle) == K19_CYCLE
        assert (outcome.cycle_length, outcome.odd_count) == (11, 5)

    def test_cycle_closes_under_t(self):
        cycle = orbit(Rational2(1, 5)).cycle
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            assert t_map(a) == b

    def test_steps_used_is_index_of_first_repeat(self):
        outcome = orbit(3)
        # 3 5 8 4 2 1 then 2 again
        assert outcome.steps_used == 6

    def test_undecided_when_cap_too_small(self):
        outcome = orbit(Rational2(187, 5), max_steps=3)
        assert not outcome.decided
        assert outcome.cycle == ()
        assert outcome.steps_used == 3
        assert len(outcome.tail) == 4

    def test_larger_cap_does_not_change_decided_outcome(self):
        assert orbit(27, 500) == orbit(27, 5000)

    def test_cap_must_be_positive(self):
        with pytest.raises(ValueError):
            orbit(1, 0)
