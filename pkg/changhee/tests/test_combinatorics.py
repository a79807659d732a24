import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import stirling

from changhee.combinatorics import (
    StirlingKind,
    binomial,
    compositions,
    falling_factorial,
    multinomial,
    rising_factorial,
    stirling_first_signed,
    stirling_second,
    stirling_triangle,
)
from changhee.errors import MalformedCompositionError
from changhee.powerseries import exp_minus_one
from changhee.ring import Polynomial, falling_factorial_poly
from conftest import rationals

N = 12


def test_triangles_match_sympy():
    for n in range(N + 1):
        for l in range(n + 1):
            assert stirling_first_signed(n, l) == stirling(n, l, kind=1, signed=True)
            assert stirling_second(n, l) == stirling(n, l, kind=2)


@pytest.mark.parametrize(
    "n, l, s1, s2",
    [(0, 0, 1, 1), (3, 1, 2, 1), (4, 2, 11, 7), (5, 3, 35, 25), (5, 2, -50, 15), (4, 0, 0, 0), (2, 3, 0, 0)],
)
def test_known_values(n, l, s1, s2):
    assert stirling_first_signed(n, l) == s1
    assert stirling_second(n, l) == s2


@pytest.mark.parametrize("n", range(N + 1))
def test_first_kind_expands_falling_factorial(n):
    row = Polynomial(tuple(stirling_first_signed(n, l) for l in range(n + 1)))
    assert row == falling_factorial_poly(n)
    assert stirling_triangle(StirlingKind.FIRST_SIGNED).row_polynomial(n) == row


@pytest.mark.parametrize("n", range(N + 1))
def test_second_kind_from_series(n):
    # (e^t - 1)^n / n! = sum_l S2(l, n) t^l / l!
    series = exp_minus_one(N) ** n
    for l in range(N + 1):
        assert series.egf(l) / math.factorial(n) == stirling_second(l, n)


def test_triangles_are_inverse():
    for l in range(N + 1):
        for m in range(N + 1):
            total = sum(stirling_second(l, j) * stirling_first_signed(j, m) for j in range(N + 1))
            assert total == (1 if l == m else 0)


def test_triangle_grows_past_default_size():
    assert stirling_second(40, 39) == math.comb(40, 2)
    assert stirling_first_signed(40, 40) == 1


def test_triangle_bound():
    triangle = stirling_triangle(StirlingKind.SECOND, 5)
    assert triangle(5, 6) == 0
    with pytest.raises(IndexError):
        triangle(6, 1)


@given(st.integers(-15, 15), st.integers(0, 8))
def test_generalized_binomial(n, m):
    assert binomial(n, m) == math.prod(n - i for i in range(m)) // math.factorial(m)
    if n >= 0:
        assert binomial(n, m) == math.comb(n, m)


def test_binomial_negative_lower_index():
    assert binomial(5, -1) == 0
    assert binomial(-3, 2) == 6


@given(st.integers(0, 7), st.integers(1, 4))
def test_compositions(n, k):
    parts = list(compositions(n, k))
    assert len(parts) == math.comb(n + k - 1, k - 1)
    assert len(set(parts)) == len(parts)
    assert all(len(p) == k and sum(p) == n for p in parts)
    # multinomial theorem with all variables equal to 1
    assert sum(multinomial(n, p) for p in parts) == k**n


def test_multinomial_rejects_bad_parts():
    assert multinomial(4, (2, 1, 1)) == 12
    with pytest.raises(MalformedCompositionError):
        multinomial(4, (2, 1))
    with pytest.raises(ValueError):
        multinomial(2, (3, -1))


@given(rationals, st.integers(0, 6))
def test_rising_is_reflected_falling(a, n):
    assert rising_factorial(a, n) == (-1) ** n * falling_factorial(-a, n)
    assert falling_factorial(a, n) == falling_factorial_poly(n)(a)
