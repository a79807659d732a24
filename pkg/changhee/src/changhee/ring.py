"""
Exact coefficient rings: rationals (``fractions.Fraction``) and dense
polynomials over the rationals in one indeterminate x.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Type, Union

from .errors import NonInvertibleError

Rational = Fraction
Scalar = Union[int, Fraction]

# degree of the zero polynomial
MINUS_INFINITY = -math.inf

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer. Raises ValueError on anything else."""
    match = _RATIONAL_PATTERN.match(text)
    if not match:
        raise ValueError(f"not a rational number: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(value: Scalar) -> str:
    # Fraction.__str__ already drops a unit denominator
    return str(Fraction(value))


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial; ``coeffs[i]`` is the coefficient of x^i, no trailing zeros."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = [Fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((Fraction(1),))

    @classmethod
    def constant(cls, value: Scalar) -> "Polynomial":
        return cls((Fraction(value),))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_json(cls, values: Sequence[str]) -> "Polynomial":
        return cls(tuple(parse_rational(v) for v in values))

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise NonInvertibleError("polynomial divided by zero")
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation; ``value`` may be a scalar or another Polynomial."""
        result = Polynomial.zero() if isinstance(value, Polynomial) else Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def compose(self, inner: "Polynomial") -> "Polynomial":
        return self(inner)

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coeffs] or ["0"]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if i == 0:
                body = format_rational(magnitude)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if magnitude == 1 else f"{format_rational(magnitude)}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _as_polynomial(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    return NotImplemented


RingElement = Union[Fraction, Polynomial]


def ring_zero(ring: Type) -> RingElement:
    return Polynomial.zero() if ring is Polynomial else Fraction(0)


def ring_one(ring: Type) -> RingElement:
    return Polynomial.one() if ring is Polynomial else Fraction(1)


def ring_of(values: Iterable[RingElement]) -> Type:
    return Polynomial if any(isinstance(v, Polynomial) for v in values) else Fraction


def lift(value: RingElement, ring: Type) -> RingElement:
    if ring is Polynomial:
        return value if isinstance(value, Polynomial) else Polynomial.constant(value)
    if isinstance(value, Polynomial):
        if not value.is_constant:
            raise TypeError(f"cannot lower non-constant polynomial {value} to a rational")
        return value.constant_term
    return Fraction(value)


def ring_inverse(value: RingElement) -> RingElement:
    """Multiplicative inverse; only nonzero constants are units."""
    if isinstance(value, Polynomial):
        if not value.is_constant or value.is_zero:
            raise NonInvertibleError(f"{value} is not an invertible constant")
        return Polynomial.constant(1 / value.constant_term)
    if value == 0:
        raise NonInvertibleError("zero has no inverse")
    return 1 / Fraction(value)


def is_zero(value: RingElement) -> bool:
    return value.is_zero if isinstance(value, Polynomial) else value == 0


def format_value(value: RingElement):
    """JSON-ready rendering: rational string or coefficient array."""
    if isinstance(value, Polynomial):
        return value.to_json()
    return format_rational(value)


def poly_eval(p: Polynomial, a: Scalar) -> Fraction:
    return p(Fraction(a))


@lru_cache(maxsize=None)
def falling_factorial_poly(n: int) -> Polynomial:
    """(x)_n = x(x-1)...(x-n+1); the constant 1 for n = 0."""
    result = Polynomial.one()
    for i in range(n):
        result = result * Polynomial((Fraction(-i), Fraction(1)))
    return result


@lru_cache(maxsize=None)
def binomial_poly(n: int) -> Polynomial:
    """C(x, n) = (x)_n / n!"""
    return falling_factorial_poly(n) / math.factorial(n)


def poly_shift(p: Polynomial, c: Scalar) -> Polynomial:
    """q(x) = p(x + c)"""
    return p(Polynomial((Fraction(c), Fraction(1))))


def poly_negate_arg(p: Polynomial) -> Polynomial:
    """q(x) = p(-x)"""
    return Polynomial(tuple(-c if i % 2 else c for i, c in enumerate(p.coeffs)))
