import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from changhee.errors import NonInvertibleError
from changhee.ring import (
    Polynomial,
    binomial_poly,
    falling_factorial_poly,
    format_value,
    lift,
    parse_rational,
    poly_eval,
    poly_negate_arg,
    poly_shift,
    ring_inverse,
)
from conftest import polynomials, rationals

X = Polynomial.x()


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3", Fraction(3)),
        ("-7/21", Fraction(-1, 3)),
        (" 1 / 2 ", Fraction(1, 2)),
        ("+4/2", Fraction(2)),
    ],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["", "1/0", "1.5", "x", "1/-2", "--1"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_zero_polynomial_is_normalized():
    p = Polynomial((Fraction(0), Fraction(0)))
    assert p == Polynomial.zero()
    assert p.degree == -math.inf
    assert p.to_json() == ["0"]
    assert str(p) == "0"


def test_trailing_zeros_trimmed():
    assert Polynomial((1, 2, 0, 0)).coeffs == (Fraction(1), Fraction(2))


def test_str_rendering():
    assert str(X**2 - 3 * X + 2) == "x^2 - 3*x + 2"
    assert str(-X + Fraction(1, 2)) == "-x + 1/2"


@given(polynomials, polynomials, polynomials)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero()
    assert p * Polynomial.one() == p


@given(polynomials, polynomials)
def test_degree_of_product(p, q):
    assert (p * q).degree == p.degree + q.degree


@given(polynomials, rationals, rationals)
def test_shift_composes(p, a, b):
    assert poly_shift(poly_shift(p, a), b) == poly_shift(p, a + b)
    assert poly_shift(p, 0) == p


@given(polynomials, rationals)
def test_negate_arg_is_involution(p, a):
    assert poly_negate_arg(poly_negate_arg(p)) == p
    assert poly_eval(poly_negate_arg(p), a) == poly_eval(p, -a)


@given(polynomials, polynomials, rationals)
def test_evaluation_is_a_homomorphism(p, q, a):
    assert (p * q)(a) == p(a) * q(a)
    assert (p + q)(a) == p(a) + q(a)
    assert p.compose(q)(a) == p(q(a))


@pytest.mark.parametrize("n", range(7))
def test_binomial_poly_at_integers(n):
    for a in range(-4, 9):
        expected = math.prod(a - i for i in range(n)) // math.factorial(n)
        assert binomial_poly(n)(a) == expected


def test_falling_factorial_poly():
    assert falling_factorial_poly(0) == Polynomial.one()
    assert falling_factorial_poly(3) == X * (X - 1) * (X - 2)


def test_inverse_only_for_nonzero_constants():
    assert ring_inverse(Fraction(3, 4)) == Fraction(4, 3)
    assert ring_inverse(Polynomial.constant(2)) == Polynomial.constant(Fraction(1, 2))
    with pytest.raises(NonInvertibleError):
        ring_inverse(X)
    with pytest.raises(NonInvertibleError):
        ring_inverse(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        X / 0


def test_lift_and_format():
    assert lift(Fraction(1, 2), Polynomial) == Polynomial.constant(Fraction(1, 2))
    assert lift(Polynomial.constant(5), Fraction) == Fraction(5)
    with pytest.raises(TypeError):
        lift(X, Fraction)
    assert format_value(Fraction(-3, 4)) == "-3/4"
    assert format_value(X - Fraction(1, 2)) == ["-1/2", "1"]


@given(st.lists(rationals, max_size=4))
def test_json_round_trip(coeffs):
    p = Polynomial(tuple(coeffs))
    assert Polynomial.from_json(p.to_json()) == p
