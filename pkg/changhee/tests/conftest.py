from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from changhee.ring import Polynomial
from changhee.sequences import SequenceProvider

settings.register_profile("changhee", deadline=None, max_examples=60)
settings.load_profile("changhee")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polynomials = st.lists(rationals, max_size=5).map(lambda cs: Polynomial(tuple(cs)))
small_polynomials = st.lists(
    st.fractions(min_value=-3, max_value=3, max_denominator=4), max_size=3
).map(lambda cs: Polynomial(tuple(cs)))


@pytest.fixture
def provider():
    return SequenceProvider()


def as_fraction(value) -> Fraction:
    """sympy Rational (or int) to Fraction"""
    return Fraction(int(value.p), int(value.q)) if hasattr(value, "q") else Fraction(int(value))
