import math
from fractions import Fraction

import pytest

from quasi3.arith import binom, rational_from_str, rational_to_str


def test_binom_matches_math_comb_on_valid_range():
    for n in range(0, 12):
        for k in range(0, n + 1):
            assert binom(n, k) == math.comb(n, k)


def test_binom_is_zero_outside_the_triangle():
    assert binom(5, 6) == 0
    assert binom(5, -1) == 0
    assert binom(-1, 0) == 0
    assert binom(-3, 2) == 0
    assert binom(-3, -2) == 0


def test_binom_edge_values():
    assert binom(0, 0) == 1
    assert binom(7, 0) == 1
    assert binom(7, 7) == 1


def test_rational_round_trip():
    for text in ("0", "5", "-5", "3/4", "-3/4", "22/7"):
        assert rational_to_str(rational_from_str(text)) == text


def test_rational_from_str_normalizes():
    assert rational_from_str("4/8") == Fraction(1, 2)
    assert rational_from_str("+6") == Fraction(6)


def test_rational_to_str_hides_unit_denominator():
    assert rational_to_str(Fraction(8, 4)) == "2"
    assert rational_to_str(Fraction(-1, 3)) == "-1/3"


@pytest.mark.parametrize("bad", ["", "1/0", "1.5", "a/b", "1/2/3", "2 /3"])
def test_rational_from_str_rejects_garbage(bad):
    with pytest.raises(ValueError):
        rational_from_str(bad)
