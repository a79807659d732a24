from functools import lru_cache

from ..combinatorics import stirling_first_signed, stirling_second
from ..powerseries import TruncatedSeries, exp_minus_one
from ..ring import Polynomial
from ..sequences import (
    Family,
    SequenceProvider,
    changhee1_poly_reversed,
    changhee1_poly_series,
)
from .registry import IdentityCheck, Sides, identity_registry


@lru_cache(maxsize=None)
def changhee1_poly_series_at_exp(k: int, order: int) -> TruncatedSeries:
    """(2/(2+t))^k (1+t)^x at t = e^t - 1, which is (2/(e^t+1))^k e^(xt)."""
    return changhee1_poly_series(k, order).compose(exp_minus_one(order))


class EulerPolyBridgeCheck(IdentityCheck):
    """Ch_n^(k)(x) = sum_l S1(n,l) E_l^(k)(x), coefficient-wise"""

    @property
    def category(self) -> str:
        return "first_kind_poly"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        rhs = sum(
            (provider.value(Family.EULER_POLY, l, k) * stirling_first_signed(n, l) for l in range(n + 1)),
            Polynomial.zero(),
        )
        yield "stirling-euler", provider.value(Family.CHANGHEE1_POLY, n, k), rhs


class BinomialExpansionCheck(IdentityCheck):
    @property
    def category(self) -> str:
        return "first_kind_poly"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        value = provider.value(Family.CHANGHEE1_POLY, n, k)
        yield "reversed-sum", value, changhee1_poly_reversed(n, k)
        yield "generating-function", value, changhee1_poly_series(k, order).egf(n)
        yield "x=0", value(0), provider.value(Family.CHANGHEE1_NUMBER, n, k)


class EulerPolyInversionCheck(IdentityCheck):
    """E_m^(k)(x) = sum_n Ch_n^(k)(x) S2(m,n)"""

    @property
    def category(self) -> str:
        return "first_kind_poly"

    def sides(self, m: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        lhs = provider.value(Family.EULER_POLY, m, k)
        rhs = sum(
            (provider.value(Family.CHANGHEE1_POLY, n, k) * stirling_second(m, n) for n in range(m + 1)),
            Polynomial.zero(),
        )
        yield "stirling-second", lhs, rhs
        yield "composition", lhs, changhee1_poly_series_at_exp(k, order).egf(m)
        yield "x=0", lhs(0), provider.value(Family.EULER_NUMBER, m, k)


# Register the identities
identity_registry.register_identity("cor4", EulerPolyBridgeCheck(), "first_kind_poly")
identity_registry.register_identity("eq22", BinomialExpansionCheck(), "first_kind_poly")
identity_registry.register_identity("thm5", EulerPolyInversionCheck(), "first_kind_poly")
