from functools import lru_cache

from ..combinatorics import stirling_first_signed, stirling_second
from ..powerseries import TruncatedSeries, exp_minus_one
from ..ring import Polynomial, poly_negate_arg, poly_shift
from ..sequences import Family, SequenceProvider, changhee2_poly_series
from .registry import IdentityCheck, Sides, identity_registry


@lru_cache(maxsize=None)
def changhee2_poly_series_at_exp(k: int, order: int) -> TruncatedSeries:
    """(1+t)^(x+k) (2/(2+t))^k at t = e^t - 1, which is e^((x+k)t) (2/(e^t+1))^k."""
    return changhee2_poly_series(k, order).compose(exp_minus_one(order))


class SecondKindPolySeriesCheck(IdentityCheck):
    """Binomial form of the second-kind polynomials against (1+t)^(x+k) (2/(2+t))^k"""

    @property
    def category(self) -> str:
        return "second_kind_poly"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        value = provider.value(Family.CHANGHEE2_POLY, n, k)
        yield "generating-function", value, changhee2_poly_series(k, order).egf(n)
        yield "x=0", value(0), provider.value(Family.CHANGHEE2_NUMBER, n, k)


class ShiftedEulerPolyCheck(IdentityCheck):
    """E_m^(k)(x+k) = sum_n Ch^_n^(k)(x) S2(m,n)"""

    @property
    def category(self) -> str:
        return "second_kind_poly"

    def sides(self, m: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        lhs = poly_shift(provider.value(Family.EULER_POLY, m, k), k)
        rhs = sum(
            (provider.value(Family.CHANGHEE2_POLY, n, k) * stirling_second(m, n) for n in range(m + 1)),
            Polynomial.zero(),
        )
        yield "stirling-second", lhs, rhs
        yield "composition", lhs, changhee2_poly_series_at_exp(k, order).egf(m)


class ReflectedEulerPolyCheck(IdentityCheck):
    """Ch^_n^(k)(x) = sum_l S1(n,l) (-1)^l E_l^(k)(-x)"""

    @property
    def category(self) -> str:
        return "second_kind_poly"

    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        rhs = sum(
            (
                poly_negate_arg(provider.value(Family.EULER_POLY, l, k)) * ((-1) ** l * stirling_first_signed(n, l))
                for l in range(n + 1)
            ),
            Polynomial.zero(),
        )
        yield "reflected-euler", provider.value(Family.CHANGHEE2_POLY, n, k), rhs


# Register the identities
identity_registry.register_identity("thm8", SecondKindPolySeriesCheck(), "second_kind_poly")
identity_registry.register_identity("thm9", ShiftedEulerPolyCheck(), "second_kind_poly")
identity_registry.register_identity("eq37", ReflectedEulerPolyCheck(), "second_kind_poly")
