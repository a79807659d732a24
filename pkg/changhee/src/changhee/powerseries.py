"""
Truncated formal power series in t, exact modulo t^(N+1), over either the
rationals or the polynomial ring Q[x].
"""
from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Type, Union

from .errors import CompositionError, ExpansionOrderError, NonInvertibleError, TruncationMismatchError
from .ring import (
    Polynomial,
    RingElement,
    binomial_poly,
    is_zero,
    lift,
    ring_inverse,
    ring_of,
    ring_one,
    ring_zero,
)

DEFAULT_TRUNCATION = 16


@dataclass(frozen=True)
class TruncatedSeries:
    """Ordinary coefficients c_0..c_N. The ring is Fraction or Polynomial."""

    coeffs: Tuple[RingElement, ...]
    ring: Type = Fraction

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(lift(c, self.ring) for c in self.coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[RingElement], order: int) -> "TruncatedSeries":
        ring = ring_of(coeffs)
        padded = list(coeffs[: order + 1])
        padded += [ring_zero(ring)] * (order + 1 - len(padded))
        return cls(tuple(padded), ring)

    @classmethod
    def constant(cls, value: RingElement, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([value], order)

    @classmethod
    def one(cls, order: int, ring: Type = Fraction) -> "TruncatedSeries":
        return cls.from_coefficients([ring_one(ring)], order)

    @classmethod
    def zero(cls, order: int, ring: Type = Fraction) -> "TruncatedSeries":
        return cls.from_coefficients([ring_zero(ring)], order)

    @classmethod
    def variable(cls, order: int, ring: Type = Fraction) -> "TruncatedSeries":
        """The series t."""
        return cls.from_coefficients([ring_zero(ring), ring_one(ring)], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> RingElement:
        return self.coeffs[0]

    def __getitem__(self, n: int) -> RingElement:
        if n < 0 or n > self.order:
            raise ExpansionOrderError(n, self.order)
        return self.coeffs[n]

    def lift(self, ring: Type = Polynomial) -> "TruncatedSeries":
        return TruncatedSeries(tuple(lift(c, ring) for c in self.coeffs), ring)

    def _coerce(self, other) -> Tuple["TruncatedSeries", "TruncatedSeries"]:
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order)
        if other.order != self.order:
            raise TruncationMismatchError(self.order, other.order)
        ring = Polynomial if Polynomial in (self.ring, other.ring) else Fraction
        return self.lift(ring), other.lift(ring)

    def __add__(self, other) -> "TruncatedSeries":
        a, b = self._coerce(other)
        return TruncatedSeries(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.ring)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other) -> "TruncatedSeries":
        a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other) -> "TruncatedSeries":
        a, b = self._coerce(other)
        return b + (-a)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction, Polynomial)):
            return self.scale(other)
        a, b = self._coerce(other)
        zero = ring_zero(a.ring)
        product = []
        for n in range(a.order + 1):
            total = zero
            for i in range(n + 1):
                if is_zero(a.coeffs[i]) or is_zero(b.coeffs[n - i]):
                    continue
                total = total + a.coeffs[i] * b.coeffs[n - i]
            product.append(total)
        return TruncatedSeries(tuple(product), a.ring)

    def __rmul__(self, other) -> "TruncatedSeries":
        return self * other

    def scale(self, factor: RingElement) -> "TruncatedSeries":
        ring = Polynomial if isinstance(factor, Polynomial) else self.ring
        base = self.lift(ring)
        return TruncatedSeries(tuple(c * factor for c in base.coeffs), ring)

    def invert(self) -> "TruncatedSeries":
        """g with f*g = 1; g_n = -(1/c_0) * sum_{i=1..n} c_i g_{n-i}."""
        try:
            inverse_c0 = ring_inverse(self.coeffs[0])
        except NonInvertibleError as exc:
            raise NonInvertibleError(f"constant term {self.coeffs[0]} is not invertible: {exc}") from exc
        g = [lift(inverse_c0, self.ring)]
        for n in range(1, self.order + 1):
            total = ring_zero(self.ring)
            for i in range(1, n + 1):
                total = total + self.coeffs[i] * g[n - i]
            g.append(-(total * inverse_c0))
        return TruncatedSeries(tuple(g), self.ring)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(ring_inverse(Fraction(other)))
        a, b = self._coerce(other)
        return a * b.invert()

    def __rtruediv__(self, other) -> "TruncatedSeries":
        a, b = self._coerce(other)
        return b * a.invert()

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = TruncatedSeries.one(self.order, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner) = sum_n c_n inner^n; inner must have zero constant term.

        Powers of ``inner`` are cached per series and stay in its own ring.
        """
        if inner.order != self.order:
            raise TruncationMismatchError(self.order, inner.order)
        if not is_zero(inner.constant_term):
            raise CompositionError(f"inner series has nonzero constant term {inner.constant_term}")
        ring = Polynomial if Polynomial in (self.ring, inner.ring) else Fraction
        totals = [ring_zero(ring)] * (self.order + 1)
        for n, (c, power) in enumerate(zip(self.coeffs, _powers(inner))):
            if is_zero(c):
                continue
            # inner^n starts at t^n
            for j in range(n, self.order + 1):
                if not is_zero(power.coeffs[j]):
                    totals[j] = totals[j] + _scaled(c, power.coeffs[j])
        return TruncatedSeries(tuple(totals), ring)

    def egf(self, n: int) -> RingElement:
        """n! * c_n, the coefficient a_n of sum a_n t^n / n!."""
        return self[n] * math.factorial(n)

    def egf_coefficients(self) -> Tuple[RingElement, ...]:
        return tuple(self.egf(n) for n in range(self.order + 1))


def series_add(a: TruncatedSeries, b: Union[TruncatedSeries, RingElement]) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: Union[TruncatedSeries, RingElement]) -> TruncatedSeries:
    return a * b


def series_scale(a: TruncatedSeries, factor: RingElement) -> TruncatedSeries:
    return a.scale(factor)


def series_negate(a: TruncatedSeries) -> TruncatedSeries:
    return -a


def series_invert(f: TruncatedSeries) -> TruncatedSeries:
    return f.invert()


@lru_cache(maxsize=64)
def _powers(inner: TruncatedSeries) -> Tuple[TruncatedSeries, ...]:
    """inner^0 .. inner^N"""
    powers = [TruncatedSeries.one(inner.order, inner.ring)]
    for _ in range(inner.order):
        powers.append(powers[-1] * inner)
    return tuple(powers)


def _scaled(a: RingElement, b: RingElement) -> RingElement:
    return b * a if isinstance(b, Polynomial) else a * b


def series_pow(f: TruncatedSeries, k: int) -> TruncatedSeries:
    return f**k


def series_compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f.compose(g)


def egf_coefficient(f: TruncatedSeries, n: int) -> RingElement:
    return f.egf(n)


def exp_series(order: int) -> TruncatedSeries:
    """e^t"""
    return TruncatedSeries(tuple(Fraction(1, math.factorial(n)) for n in range(order + 1)))


def exp_minus_one(order: int) -> TruncatedSeries:
    """e^t - 1"""
    return exp_series(order) - 1


def exp_linear(a: Union[Fraction, Polynomial], order: int) -> TruncatedSeries:
    """e^(a t) with c_n = a^n / n!, built directly (a may be the polynomial x)."""
    ring = Polynomial if isinstance(a, Polynomial) else Fraction
    coeffs = []
    power = lift(Fraction(1), ring)
    for n in range(order + 1):
        coeffs.append(power * Fraction(1, math.factorial(n)))
        power = power * a
    return TruncatedSeries(tuple(coeffs), ring)


def binomial_series(exponent: Union[int, Fraction, Polynomial], order: int) -> TruncatedSeries:
    """(1+t)^a = sum C(a, n) t^n, with C(a, n) = binomial_poly(n) evaluated at a."""
    if isinstance(exponent, Polynomial):
        return TruncatedSeries(tuple(binomial_poly(n).compose(exponent) for n in range(order + 1)), Polynomial)
    a = Fraction(exponent)
    return TruncatedSeries(tuple(binomial_poly(n)(a) for n in range(order + 1)))


def changhee_kernel(order: int) -> TruncatedSeries:
    """2 / (2 + t)"""
    return 2 / (TruncatedSeries.variable(order) + 2)


def euler_kernel(order: int) -> TruncatedSeries:
    """2 / (e^t + 1)"""
    return 2 / (exp_series(order) + 1)
