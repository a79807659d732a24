"""
Inversion pairs between the two kinds: each side is a polynomial in x, and the
m-sums start at 1 because C(n-1, n) vanishes for n >= 1.
"""
import math
from fractions import Fraction

from ..combinatorics import binomial
from ..ring import Polynomial, binomial_poly, poly_negate_arg, poly_shift
from ..sequences import Family, SequenceProvider
from .registry import IdentityCheck, Sides, identity_registry


def reflected_sum(provider: SequenceProvider, family: Family, n: int, k: int, start: int = 1) -> Polynomial:
    """sum_{m=start..n} C(n-1, n-m)/m! P_m(-x) for the polynomial family P"""
    return sum(
        (
            poly_negate_arg(provider.value(family, m, k)) * Fraction(binomial(n - 1, n - m), math.factorial(m))
            for m in range(start, n + 1)
        ),
        Polynomial.zero(),
    )


def scaled_by_sign(value: Polynomial, n: int) -> Polynomial:
    """(-1)^n value / n!"""
    return value * Fraction((-1) ** n, math.factorial(n))


class SecondFromFirstCheck(IdentityCheck):
    n_start = 1

    @property
    def category(self) -> str:
        return "inversion"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        lhs = scaled_by_sign(provider.value(Family.CHANGHEE2_POLY, n, k), n)
        yield "reflected-first-kind", lhs, reflected_sum(provider, Family.CHANGHEE1_POLY, n, k)
        m_zero = poly_negate_arg(provider.value(Family.CHANGHEE1_POLY, 0, k)) * binomial(n - 1, n)
        yield "m=0 term", m_zero, Polynomial.zero()


class FirstFromSecondCheck(IdentityCheck):
    n_start = 1

    @property
    def category(self) -> str:
        return "inversion"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        lhs = scaled_by_sign(provider.value(Family.CHANGHEE1_POLY, n, k), n)
        yield "reflected-second-kind", lhs, reflected_sum(provider, Family.CHANGHEE2_POLY, n, k)


class BinomialChainCheck(IdentityCheck):
    """The reflection and Vandermonde steps, then the sum taken from m = 0"""

    n_start = 1

    @property
    def category(self) -> str:
        return "inversion"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        rising = poly_shift(binomial_poly(n), n - 1)
        yield "reflection", poly_negate_arg(binomial_poly(n)) * (-1) ** n, rising
        vandermonde = sum((binomial_poly(m) * binomial(n - 1, n - m) for m in range(n + 1)), Polynomial.zero())
        yield "vandermonde", rising, vandermonde
        lhs = scaled_by_sign(provider.value(Family.CHANGHEE2_POLY, n, k), n)
        yield "sum-from-zero", lhs, reflected_sum(provider, Family.CHANGHEE1_POLY, n, k, start=0)


# Register the identities
identity_registry.register_identity("thm10", SecondFromFirstCheck(), "inversion")
identity_registry.register_identity("thm11", FirstFromSecondCheck(), "inversion")
identity_registry.register_identity("eq40", BinomialChainCheck(), "inversion")
