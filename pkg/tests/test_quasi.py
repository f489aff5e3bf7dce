import random
from fractions import Fraction

import pytest

from quasi3.poly import Polynomial, elementary, parse_poly, vandermonde_power
from quasi3.quasi import (
    COINVARIANT_BASIS,
    coinvariant_nf,
    divisible_power,
    divmod_linear,
    graded_qi_basis,
    in_ideal_part,
    independent_modulo_ideal,
    is_quasiinvariant,
    largest_dividing_power,
    monomials_of_degree,
    qi_dimension_series,
    quotient_degrees,
    remainder_tower,
)

x1 = Polynomial.variable(1)
x2 = Polynomial.variable(2)
x3 = Polynomial.variable(3)


def random_poly(rng, max_terms=6, max_exp=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(rng.randint(0, max_exp) for _ in range(3))
        terms[exp] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return Polynomial(terms)


def test_divmod_linear_is_exact():
    # P = q * (x_i - x_j) + r with r free of x_i
    rng = random.Random(0)
    for _ in range(25):
        p = random_poly(rng)
        for i, j in ((1, 2), (1, 3), (2, 3)):
            q, r = divmod_linear(p, i, j)
            assert q * (Polynomial.variable(i) - Polynomial.variable(j)) + r == p
            assert r.var_degree(i) == 0


def test_divmod_linear_simple():
    q, r = divmod_linear(x1**2 - x2**2, 1, 2)
    assert q == x1 + x2
    assert r.is_zero()
    q, r = divmod_linear(x1**2, 1, 2)
    assert q == x1 + x2
    assert r == x2**2


def test_remainder_tower_length_and_reconstruction():
    p = (x1 - x2) ** 3 * (x1 + x3)
    remainders, q = remainder_tower(p, 1, 2, 5)
    assert len(remainders) == 5
    # divisible by (x1 - x2)^3 exactly; the quotient x1 + x3 leaves
    # remainder x2 + x3 and then the constant quotient 1 stays nonzero
    assert [r.is_zero() for r in remainders] == [True, True, True, False, False]
    assert q.is_zero()


def test_divisible_power():
    p = (x1 - x3) ** 4 * (x2 + 1)
    assert divisible_power(p, 1, 3, 4)
    assert divisible_power(p, 1, 3, 3)
    assert not divisible_power(p, 1, 3, 5)
    assert largest_dividing_power(p, 1, 3) == 4
    assert largest_dividing_power(p, 1, 2) == 0
    assert largest_dividing_power(Polynomial.zero(), 1, 2) is None


def test_symmetric_polynomials_are_quasiinvariant_for_all_m():
    for k in (1, 2, 3):
        for m in range(4):
            report = is_quasiinvariant(elementary(k), m)
            assert report.is_quasiinvariant
            assert all(c.difference_zero for c in report.checks)


def test_delta_odd_powers_are_quasiinvariant():
    for m in range(3):
        delta = vandermonde_power(2 * m + 1)
        assert is_quasiinvariant(delta, m).is_quasiinvariant
        if m:
            assert not is_quasiinvariant(delta, m + 1).is_quasiinvariant


def test_power_sums_are_quasiinvariant():
    for p in range(1, 6):
        s = x1**p + x2**p + x3**p
        assert is_quasiinvariant(s, 5).is_quasiinvariant


def test_non_quasiinvariant_detected():
    report = is_quasiinvariant(x1, 1)
    assert not report.is_quasiinvariant
    # (1 - s12) x1 = x1 - x2 carries exactly one factor; s23 fixes x1
    bad = [c for c in report.checks if not c.divisible]
    assert [c.pair for c in bad] == [(1, 2), (1, 3)]
    assert all(c.largest_power == 1 and c.required_power == 3 for c in bad)


def test_quasiinvariants_form_a_ring():
    rng = random.Random(13)
    m = 1
    basis4 = graded_qi_basis(m, 4)
    basis5 = graded_qi_basis(m, 5)
    for _ in range(5):
        p = sum(
            (b * Fraction(rng.randint(-3, 3)) for b in basis4),
            Polynomial.zero(),
        )
        q = sum(
            (b * Fraction(rng.randint(-3, 3)) for b in basis5),
            Polynomial.zero(),
        )
        assert is_quasiinvariant(p + q * q, m).is_quasiinvariant
        assert is_quasiinvariant(p * q, m).is_quasiinvariant


def test_monomials_of_degree():
    mons = monomials_of_degree(2)
    assert len(mons) == 6
    assert mons[0] == (2, 0, 0)
    assert all(sum(e) == 2 for e in mons)
    assert len(monomials_of_degree(0)) == 1


def test_graded_basis_dimensions_match_series():
    for m in (0, 1, 2):
        series = qi_dimension_series(m, 3 * m + 3)
        for d, expected in enumerate(series):
            got = graded_qi_basis(m, d)
            assert len(got) == expected
            for b in got:
                assert is_quasiinvariant(b, m).is_quasiinvariant


def test_graded_basis_m1_low_degrees():
    assert [str(b) for b in graded_qi_basis(1, 0)] == ["1"]
    assert [str(b) for b in graded_qi_basis(1, 1)] == ["x1 + x2 + x3"]
    assert len(graded_qi_basis(1, 2)) == 2
    assert len(graded_qi_basis(1, 3)) == 3


def test_quotient_degrees():
    assert quotient_degrees(0) == (0, 1, 1, 2, 2, 3)
    assert quotient_degrees(1) == (0, 4, 4, 5, 5, 9)
    assert quotient_degrees(2) == (0, 7, 7, 8, 8, 15)


def test_qi_dimension_series_m0_is_full_polynomial_ring_graded_count():
    # m = 0: all polynomials; dim of degree d slice is binom(d+2, 2)
    series = qi_dimension_series(0, 8)
    assert series == [(d + 2) * (d + 1) // 2 for d in range(9)]


def test_coinvariant_nf_basics():
    assert list(coinvariant_nf(elementary(1))) == [0] * 6
    assert list(coinvariant_nf(elementary(2))) == [0] * 6
    assert list(coinvariant_nf(elementary(3))) == [0] * 6
    assert list(coinvariant_nf(Polynomial.constant(1))) == [1, 0, 0, 0, 0, 0]
    assert list(coinvariant_nf(vandermonde_power(1))) == [0, 0, 0, 0, 0, -6]


def test_coinvariant_nf_is_linear_and_kills_the_ideal():
    rng = random.Random(4)
    for _ in range(10):
        p = random_poly(rng, max_exp=3)
        q = random_poly(rng, max_exp=3)
        lhs = list(coinvariant_nf(p + q))
        rhs = [a + b for a, b in zip(coinvariant_nf(p), coinvariant_nf(q))]
        assert lhs == rhs
        # adding an ideal element never changes the normal form
        shifted = p + elementary(1) * q
        assert coinvariant_nf(shifted) == coinvariant_nf(p)


def test_coinvariant_basis_normal_forms_are_unit_vectors():
    for idx, (b, c) in enumerate(COINVARIANT_BASIS):
        mono = Polynomial.monomial((0, b, c))
        nf = list(coinvariant_nf(mono))
        expected = [0] * 6
        expected[idx] = 1
        assert nf == expected


def test_ideal_membership_m1():
    m = 1
    qi4 = graded_qi_basis(m, 4)
    e1 = elementary(1)
    # e1 * (degree-3 quasiinvariant) lies in the ideal part
    for b in graded_qi_basis(m, 3):
        assert in_ideal_part(e1 * b, m)
    # the two ansatz-degree elements are not all in the ideal
    assert any(not in_ideal_part(b, m) for b in qi4)


def test_independent_modulo_ideal_m1():
    m = 1
    a1 = parse_poly("x1^4 - 2*x1^3*x2 - 2*x1^3*x3 + 6*x1^2*x2*x3")
    from quasi3.poly import S12

    b1 = a1.apply_perm(S12)
    assert independent_modulo_ideal([a1, b1], m)
    # a pair with a dependency modulo the ideal is rejected
    e1 = elementary(1)
    dep = a1 + e1 * graded_qi_basis(m, 3)[0]
    assert not independent_modulo_ideal([a1, dep], m)


def test_is_quasiinvariant_rejects_negative_m():
    with pytest.raises(ValueError):
        is_quasiinvariant(x1, -1)
