from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitz_kz.exact import (
    RationalPoly,
    bernoulli_number,
    bernoulli_poly,
    format_rational,
    parse_rational,
)

Z = RationalPoly.z()


def _bernoulli_oracle(n):
    # Akiyama-Tanigawa, which lands on B_1 = +1/2; flip it back
    a = [F(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = F(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return -a[0] if n == 1 else a[0]


@pytest.mark.parametrize("n", range(0, 31))
def test_bernoulli_numbers_match_independent_recurrence(n):
    assert bernoulli_number(n) == _bernoulli_oracle(n)


def test_bernoulli_known_values():
    assert bernoulli_number(1) == F(-1, 2)
    assert bernoulli_number(2) == F(1, 6)
    assert bernoulli_number(12) == F(-691, 2730)
    assert all(bernoulli_number(n) == 0 for n in range(3, 41, 2))


def test_bernoulli_polys_small():
    assert bernoulli_poly(1) == Z - F(1, 2)
    assert bernoulli_poly(2) == Z * Z - Z + F(1, 6)
    assert bernoulli_poly(3) == Z * Z * Z - F(3, 2) * Z * Z + F(1, 2) * Z


@pytest.mark.parametrize("n", range(2, 16))
def test_bernoulli_endpoints_and_shift(n):
    b = bernoulli_poly(n)
    assert b(0) == b(1) == bernoulli_number(n)
    # B_n(z+1) - B_n(z) = n z^{n-1}
    assert b.shift(1) - b == RationalPoly.monomial(n - 1, n)


def test_bernoulli_poly_is_binomial_sum():
    n = 9
    expected = RationalPoly([comb(n, j) * bernoulli_number(n - j) for j in range(n + 1)])
    assert bernoulli_poly(n) == expected


def test_parse_and_format():
    assert parse_rational(" 3/6 ") == F(1, 2)
    assert parse_rational("2.5") == F(5, 2)
    assert format_rational(F(4)) == "4/1"
    for bad in ["", "1/0", "abc", "1/2/3"]:
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_poly_canonical_and_pretty():
    p = RationalPoly([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert RationalPoly().degree == -1
    assert (Z * Z / 2 - F(1, 6)).pretty() == "z²/2 − 1/6"
    assert str(-(Z * Z * Z) / 6 - Z * Z / 4 + Z / 12 + F(1, 12)) == "−z³/6 − z²/4 + z/12 + 1/12"


def test_evaluation_exact_vs_float():
    p = Z * Z - F(1, 3)
    assert p(F(1, 2)) == F(-1, 12)
    assert isinstance(p(F(1, 2)), F)
    assert abs(p(0.5) + 1 / 12) < 1e-15


def test_division_by_zero_scalar():
    with pytest.raises(ZeroDivisionError):
        Z / 0


small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small_q, max_size=6).map(RationalPoly)


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RationalPoly()


@settings(max_examples=100, deadline=None)
@given(polys, polys, small_q, small_q)
def test_shift_is_a_ring_map(a, b, h, x):
    assert (a * b).shift(h) == a.shift(h) * b.shift(h)
    assert a.shift(h)(x) == a(x + h)
