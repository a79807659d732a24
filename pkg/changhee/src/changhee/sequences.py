"""
Higher-order Euler and Changhee sequence families.

Each family has a primary implementation (closed form where one exists) and
one or more independent routes (series extraction, Stirling bridges,
convolutions) that the identity harness uses to certify it.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_validator

from .combinatorics import (
    binomial,
    compositions,
    multinomial,
    stirling_first_signed,
)
from .powerseries import (
    DEFAULT_TRUNCATION,
    TruncatedSeries,
    binomial_series,
    changhee_kernel,
    euler_kernel,
    exp_linear,
)
from .ring import Polynomial, RingElement, binomial_poly, format_value, poly_negate_arg, poly_shift

logger = logging.getLogger(__name__)

X = Polynomial.x()
HALF = Fraction(1, 2)


class Family(str, Enum):
    EULER_NUMBER = "euler-number"
    EULER_POLY = "euler-poly"
    CHANGHEE1_NUMBER = "changhee1-number"
    CHANGHEE1_POLY = "changhee1-poly"
    CHANGHEE2_NUMBER = "changhee2-number"
    CHANGHEE2_POLY = "changhee2-poly"

    @property
    def is_polynomial(self) -> bool:
        return self.value.endswith("-poly")


def _expansion_order(n: int) -> int:
    # share one cached series per order k for every n up to the default
    return max(n, DEFAULT_TRUNCATION)


def _check_index(n: int, k: int) -> None:
    if n < 0:
        raise ValueError(f"index n must be nonnegative, got {n}")
    if k < 1:
        raise ValueError(f"order k must be a positive integer, got {k}")


# -- series -------------------------------------------------------------------


@lru_cache(maxsize=None)
def changhee1_series(k: int, order: int) -> TruncatedSeries:
    """(2/(2+t))^k"""
    return changhee_kernel(order) ** k


@lru_cache(maxsize=None)
def changhee1_poly_series(k: int, order: int) -> TruncatedSeries:
    """(2/(2+t))^k (1+t)^x"""
    return changhee1_series(k, order) * binomial_series(X, order)


@lru_cache(maxsize=None)
def changhee2_series(k: int, order: int) -> TruncatedSeries:
    """(2/(2+t))^k (1+t)^k"""
    return changhee1_series(k, order) * binomial_series(k, order)


@lru_cache(maxsize=None)
def changhee2_poly_series(k: int, order: int) -> TruncatedSeries:
    """(1+t)^(x+k) (2/(2+t))^k"""
    return binomial_series(X + k, order) * changhee1_series(k, order)


@lru_cache(maxsize=None)
def euler_series(k: int, order: int) -> TruncatedSeries:
    """(2/(e^t+1))^k"""
    return euler_kernel(order) ** k


@lru_cache(maxsize=None)
def euler_poly_series(k: int, order: int) -> TruncatedSeries:
    """(2/(e^t+1))^k e^(xt)"""
    return euler_series(k, order).lift() * exp_linear(X, order)


# -- Euler numbers and polynomials of order k --------------------------------


@lru_cache(maxsize=None)
def euler_number(n: int, k: int) -> Fraction:
    _check_index(n, k)
    return euler_series(k, _expansion_order(n)).egf(n)


@lru_cache(maxsize=None)
def euler_poly(n: int, k: int) -> Polynomial:
    _check_index(n, k)
    return euler_poly_series(k, _expansion_order(n)).egf(n)


def euler_poly_via_binomial(n: int, k: int) -> Polynomial:
    """sum_j C(n,j) E_j^(k) x^(n-j)"""
    _check_index(n, k)
    return sum((X ** (n - j) * (binomial(n, j) * euler_number(j, k)) for j in range(n + 1)), Polynomial.zero())


@lru_cache(maxsize=None)
def univariate_fermionic_moment(l: int) -> Fraction:
    """
    I(x^l) for the fermionic integral, read off the functional equation
    I(f(x+1)) + I(f(x)) = 2 f(0) with f(x) = x^l.
    """
    lower = sum((binomial(l, j) * univariate_fermionic_moment(j) for j in range(l)), Fraction(0))
    return ((2 if l == 0 else 0) - lower) * HALF


@lru_cache(maxsize=None)
def fermionic_moment(n: int, k: int) -> Fraction:
    """
    The k-variate moment I((x_1 + ... + x_k)^n), expanded by the multinomial
    theorem over independent univariate moments. Equals E_n^(k).
    """
    _check_index(n, k)
    total = Fraction(0)
    for parts in compositions(n, k):
        total += multinomial(n, parts) * math.prod(
            (univariate_fermionic_moment(p) for p in parts), start=Fraction(1)
        )
    return total


# -- Changhee numbers of the first kind ---------------------------------------


@lru_cache(maxsize=None)
def changhee1_number(n: int, k: int) -> Fraction:
    """(-1/2)^n n! C(n+k-1, n)"""
    _check_index(n, k)
    return (-HALF) ** n * math.factorial(n) * binomial(n + k - 1, n)


def changhee1_number_via_series(n: int, k: int) -> Fraction:
    _check_index(n, k)
    return changhee1_series(k, _expansion_order(n)).egf(n)


def changhee1_number_via_stirling(n: int, k: int) -> Fraction:
    """(-1/2)^n sum_l S1(n,l) (k+n-1)^l"""
    _check_index(n, k)
    return (-HALF) ** n * sum(stirling_first_signed(n, l) * (k + n - 1) ** l for l in range(n + 1))


def changhee1_number_via_euler(n: int, k: int) -> Fraction:
    """sum_l S1(n,l) E_l^(k), the falling factorial integrated against the moments."""
    _check_index(n, k)
    return sum((stirling_first_signed(n, l) * fermionic_moment(l, k) for l in range(n + 1)), Fraction(0))


def changhee1_number_via_convolution(n: int, k: int) -> Fraction:
    """Multinomial convolution of k copies of the order-1 sequence."""
    _check_index(n, k)
    total = Fraction(0)
    for parts in compositions(n, k):
        total += multinomial(n, parts) * math.prod((changhee1_number(p, 1) for p in parts), start=Fraction(1))
    return total


@lru_cache(maxsize=None)
def changhee1_poly(n: int, k: int) -> Polynomial:
    """sum_m C(x,m) n!/(n-m)! Ch_{n-m}^(k)"""
    _check_index(n, k)
    return sum(
        (binomial_poly(m) * (math.perm(n, m) * changhee1_number(n - m, k)) for m in range(n + 1)),
        Polynomial.zero(),
    )


def changhee1_poly_reversed(n: int, k: int) -> Polynomial:
    """sum_m C(x,n-m) n!/m! Ch_m^(k)"""
    _check_index(n, k)
    return sum(
        (binomial_poly(n - m) * (Fraction(math.factorial(n), math.factorial(m)) * changhee1_number(m, k)) for m in range(n + 1)),
        Polynomial.zero(),
    )


def changhee1_poly_via_series(n: int, k: int) -> Polynomial:
    _check_index(n, k)
    return changhee1_poly_series(k, _expansion_order(n)).egf(n)


def changhee1_poly_via_euler(n: int, k: int) -> Polynomial:
    """sum_l S1(n,l) E_l^(k)(x)"""
    _check_index(n, k)
    return sum((euler_poly(l, k) * stirling_first_signed(n, l) for l in range(n + 1)), Polynomial.zero())


# -- Changhee numbers of the second kind --------------------------------------


@lru_cache(maxsize=None)
def changhee2_number(n: int, k: int) -> Fraction:
    """sum_m m! C(k,m) C(n,m) Ch_{n-m}^(k); terms with m > k vanish."""
    _check_index(n, k)
    return sum(
        (math.factorial(m) * binomial(k, m) * binomial(n, m) * changhee1_number(n - m, k) for m in range(n + 1)),
        Fraction(0),
    )


def changhee2_number_via_binomial(n: int, k: int) -> Fraction:
    """sum_m C(k,m) Ch_{n-m}^(k) n!/(n-m)!"""
    _check_index(n, k)
    return sum((binomial(k, m) * changhee1_number(n - m, k) * math.perm(n, m) for m in range(n + 1)), Fraction(0))


def changhee2_number_via_series(n: int, k: int) -> Fraction:
    _check_index(n, k)
    return changhee2_series(k, _expansion_order(n)).egf(n)


def changhee2_number_via_euler(n: int, k: int) -> Fraction:
    """sum_l (-1)^l S1(n,l) E_l^(k)"""
    _check_index(n, k)
    return sum(((-1) ** l * stirling_first_signed(n, l) * fermionic_moment(l, k) for l in range(n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def changhee2_poly(n: int, k: int) -> Polynomial:
    """sum_m m! C(x+k,m) C(n,m) Ch_{n-m}^(k)"""
    _check_index(n, k)
    return sum(
        (
            poly_shift(binomial_poly(m), k) * (math.factorial(m) * binomial(n, m) * changhee1_number(n - m, k))
            for m in range(n + 1)
        ),
        Polynomial.zero(),
    )


def changhee2_poly_unshifted(n: int, k: int) -> Polynomial:
    """
    The summand with C(x,m) in place of C(x+k,m). This expands
    (2/(2+t))^k (1+t)^x, i.e. it reproduces Ch_n^(k)(x), not the second kind.
    """
    _check_index(n, k)
    return sum(
        (binomial_poly(m) * (math.factorial(m) * binomial(n, m) * changhee1_number(n - m, k)) for m in range(n + 1)),
        Polynomial.zero(),
    )


def changhee2_poly_via_series(n: int, k: int) -> Polynomial:
    _check_index(n, k)
    return changhee2_poly_series(k, _expansion_order(n)).egf(n)


def changhee2_poly_via_euler(n: int, k: int) -> Polynomial:
    """sum_l S1(n,l) (-1)^l E_l^(k)(-x)"""
    _check_index(n, k)
    return sum(
        (poly_negate_arg(euler_poly(l, k)) * ((-1) ** l * stirling_first_signed(n, l)) for l in range(n + 1)),
        Polynomial.zero(),
    )


# -- tables -------------------------------------------------------------------

FAMILY_FUNCTIONS: Dict[Family, Callable[[int, int], RingElement]] = {
    Family.EULER_NUMBER: euler_number,
    Family.EULER_POLY: euler_poly,
    Family.CHANGHEE1_NUMBER: changhee1_number,
    Family.CHANGHEE1_POLY: changhee1_poly,
    Family.CHANGHEE2_NUMBER: changhee2_number,
    Family.CHANGHEE2_POLY: changhee2_poly,
}


class SequenceProvider:
    """Source of table values read by the identity checkers."""

    def value(self, family: Family, n: int, k: int) -> RingElement:
        return FAMILY_FUNCTIONS[family](n, k)

    def table(self, family: Family, k: int, n_max: int) -> "SequenceTable":
        return SequenceTable(
            family=family, k=k, n_max=n_max, values=[self.value(family, n, k) for n in range(n_max + 1)]
        )


class PerturbedProvider(SequenceProvider):
    """Adds ``delta`` to exactly one (family, n, k) value."""

    def __init__(self, family: Family, n: int, k: int, delta: Union[int, Fraction] = 1,
                 base: Optional[SequenceProvider] = None):
        self.family = family
        self.n = n
        self.k = k
        self.delta = Fraction(delta)
        self.base = base or SequenceProvider()

    def value(self, family: Family, n: int, k: int) -> RingElement:
        value = self.base.value(family, n, k)
        if (family, n, k) == (self.family, self.n, self.k):
            logger.debug("perturbing %s at n=%d, k=%d by %s", family.value, n, k, self.delta)
            return value + self.delta
        return value


class SequenceTable(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    family: Family
    k: int = Field(ge=1)
    n_max: int = Field(ge=0)
    values: List[Union[InstanceOf[Fraction], InstanceOf[Polynomial]]]

    @field_validator("values", mode="before")
    @classmethod
    def _exact(cls, values):
        return [Fraction(v) if isinstance(v, int) else v for v in values]

    @field_validator("values")
    @classmethod
    def _starts_with_one(cls, values):
        if values and values[0] != 1 and values[0] != Polynomial.one():
            logger.warning("table value at n=0 is %s, expected 1", values[0])
        return values

    def to_json_dict(self) -> dict:
        return {"family": self.family.value, "k": self.k, "values": [format_value(v) for v in self.values]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "value"])
        for n, value in enumerate(self.values):
            writer.writerow([n, csv_cell(value)])
        return buffer.getvalue()


def csv_cell(value: RingElement) -> str:
    """Rational string, or polynomial coefficients (lowest degree first) joined by ';'."""
    rendered = format_value(value)
    return ";".join(rendered) if isinstance(rendered, list) else rendered


def build_table(family: Family, k: int, n_max: int, provider: Optional[SequenceProvider] = None) -> SequenceTable:
    _check_index(n_max, k)
    return (provider or SequenceProvider()).table(family, k, n_max)
