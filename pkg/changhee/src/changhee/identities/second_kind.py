from fractions import Fraction
from functools import lru_cache

from ..combinatorics import stirling_first_signed, stirling_second
from ..powerseries import TruncatedSeries, exp_minus_one
from ..ring import falling_factorial_poly, poly_negate_arg
from ..sequences import (
    Family,
    SequenceProvider,
    changhee2_number_via_binomial,
    changhee2_series,
)
from .registry import IdentityCheck, Sides, identity_registry


@lru_cache(maxsize=None)
def changhee2_series_at_exp(k: int, order: int) -> TruncatedSeries:
    """(2/(2+t))^k (1+t)^k at t = e^t - 1, which is (2/(e^t+1))^k e^(kt)."""
    return changhee2_series(k, order).compose(exp_minus_one(order))


class SecondKindSeriesCheck(IdentityCheck):
    """Binomial form of the second-kind numbers against their generating function"""

    @property
    def category(self) -> str:
        return "second_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        yield "generating-function", provider.value(Family.CHANGHEE2_NUMBER, n, k), changhee2_series(k, order).egf(n)


class SecondKindEulerCheck(IdentityCheck):
    """Ch^_n^(k) = sum_l (-1)^l S1(n,l) E_l^(k), also through the rising factorial"""

    @property
    def category(self) -> str:
        return "second_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        value = provider.value(Family.CHANGHEE2_NUMBER, n, k)
        euler = [provider.value(Family.EULER_NUMBER, l, k) for l in range(n + 1)]
        signed = sum(((-1) ** l * stirling_first_signed(n, l) * euler[l] for l in range(n + 1)), Fraction(0))
        yield "signed-stirling-euler", value, signed
        # (-y)_n = (-1)^n y^(n): integrate the rising factorial coefficients instead
        rising = poly_negate_arg(falling_factorial_poly(n)) * (-1) ** n
        via_rising = (-1) ** n * sum((rising.coefficient(l) * euler[l] for l in range(n + 1)), Fraction(0))
        yield "rising-factorial", value, via_rising


class SecondKindBinomialCheck(IdentityCheck):
    @property
    def category(self) -> str:
        return "second_kind"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        yield "binomial-sum", provider.value(Family.CHANGHEE2_NUMBER, n, k), changhee2_number_via_binomial(n, k)


class EulerAtOrderCheck(IdentityCheck):
    """E_m^(k)(k) = sum_n Ch^_n^(k) S2(m,n)"""

    @property
    def category(self) -> str:
        return "second_kind"

    def sides(self, m: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        lhs = provider.value(Family.EULER_POLY, m, k)(k)
        rhs = sum(
            (provider.value(Family.CHANGHEE2_NUMBER, n, k) * stirling_second(m, n) for n in range(m + 1)),
            Fraction(0),
        )
        yield "stirling-second", lhs, rhs
        yield "composition", lhs, changhee2_series_at_exp(k, order).egf(m)


# Register the identities
identity_registry.register_identity("thm6", SecondKindSeriesCheck(), "second_kind")
identity_registry.register_identity("eq28", SecondKindEulerCheck(), "second_kind")
identity_registry.register_identity("eq31", SecondKindBinomialCheck(), "second_kind")
identity_registry.register_identity("thm7", EulerAtOrderCheck(), "second_kind")
