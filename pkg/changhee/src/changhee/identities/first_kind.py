import math
from fractions import Fraction
from functools import lru_cache

from ..combinatorics import binomial, falling_factorial, stirling_first_signed, stirling_second
from ..powerseries import TruncatedSeries, exp_minus_one
from ..sequences import (
    Family,
    SequenceProvider,
    changhee1_number_via_convolution,
    changhee1_number_via_stirling,
    changhee1_series,
    euler_series,
    fermionic_moment,
)

from .registry import IdentityCheck, Sides, identity_registry


@lru_cache(maxsize=None)
def changhee1_series_at_exp(k: int, order: int) -> TruncatedSeries:
    """(2/(2+t))^k with t replaced by e^t - 1."""
    return changhee1_series(k, order).compose(exp_minus_one(order))


class StirlingClosedFormCheck(IdentityCheck):
    """Ch_n^(k) against (-1/2)^n sum_l S1(n,l) (k+n-1)^l"""

    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        yield "stirling", provider.value(Family.CHANGHEE1_NUMBER, n, k), changhee1_number_via_stirling(n, k)


class ConvolutionCheck(IdentityCheck):
    """Ch_n^(k) as the k-fold multinomial convolution of the order-1 numbers"""

    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        yield "convolution", provider.value(Family.CHANGHEE1_NUMBER, n, k), changhee1_number_via_convolution(n, k)


class ClosedFormCheck(IdentityCheck):
    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        value = provider.value(Family.CHANGHEE1_NUMBER, n, k)
        closed = (-1) ** n * math.factorial(n) * binomial(n + k - 1, n)
        yield "closed-form", 2**n * value, Fraction(closed)
        yield "falling-factorial", Fraction(closed), (-1) ** n * falling_factorial(k + n - 1, n)
        yield "generating-function", value, changhee1_series(k, order).egf(n)


class EulerBridgeCheck(IdentityCheck):
    """Ch_n^(k) = sum_l S1(n,l) E_l^(k) with Euler numbers from the table"""

    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        rhs = sum(
            (stirling_first_signed(n, l) * provider.value(Family.EULER_NUMBER, l, k) for l in range(n + 1)),
            Fraction(0),
        )
        yield "stirling-euler", provider.value(Family.CHANGHEE1_NUMBER, n, k), rhs


class MomentBridgeCheck(IdentityCheck):
    """The same bridge with moments taken from the fermionic functional equation"""

    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        yield "moment-oracle", fermionic_moment(n, k), euler_series(k, order).egf(n)
        rhs = sum((stirling_first_signed(n, l) * fermionic_moment(l, k) for l in range(n + 1)), Fraction(0))
        yield "stirling-moments", provider.value(Family.CHANGHEE1_NUMBER, n, k), rhs


class EulerInversionCheck(IdentityCheck):
    """E_m^(k) = sum_n Ch_n^(k) S2(m,n), directly and by series composition"""

    @property
    def category(self) -> str:
        return "first_kind"

    def sides(self, m: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        lhs = provider.value(Family.EULER_NUMBER, m, k)
        rhs = sum(
            (provider.value(Family.CHANGHEE1_NUMBER, n, k) * stirling_second(m, n) for n in range(m + 1)),
            Fraction(0),
        )
        yield "stirling-second", lhs, rhs
        yield "composition", lhs, changhee1_series_at_exp(k, order).egf(m)


# Register the identities
identity_registry.register_identity("thm1", StirlingClosedFormCheck(), "first_kind")
identity_registry.register_identity("eq11", ConvolutionCheck(), "first_kind")
identity_registry.register_identity("eq13", ClosedFormCheck(), "first_kind")
identity_registry.register_identity("thm2", EulerBridgeCheck(), "first_kind")
identity_registry.register_identity("eq16", MomentBridgeCheck(), "first_kind")
identity_registry.register_identity("thm3", EulerInversionCheck(), "first_kind")
