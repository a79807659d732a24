"""
Stirling triangles, generalized binomials, multinomials and factorial values.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

from .errors import MalformedCompositionError
from .ring import Polynomial, Scalar

logger = logging.getLogger(__name__)

# triangles are built at least this large so repeated lookups share one table
TRIANGLE_SIZE = 32


class StirlingKind(str, Enum):
    FIRST_SIGNED = "first_signed"
    SECOND = "second"


@dataclass(frozen=True)
class StirlingTriangle:
    kind: StirlingKind
    max_n: int
    values: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, kind: StirlingKind, max_n: int) -> "StirlingTriangle":
        rows = [[1]]
        for n in range(1, max_n + 1):
            prev = rows[-1]
            row = [0] * (n + 1)
            for l in range(1, n + 1):
                left = prev[l - 1]
                upper = prev[l] if l < n else 0
                if kind is StirlingKind.FIRST_SIGNED:
                    row[l] = left - (n - 1) * upper
                else:
                    row[l] = l * upper + left
            rows.append(row)
        logger.debug("built %s Stirling triangle up to n=%d", kind.value, max_n)
        return cls(kind, max_n, tuple(tuple(r) for r in rows))

    def __call__(self, n: int, l: int) -> int:
        if n > self.max_n:
            raise IndexError(f"n={n} exceeds the triangle bound {self.max_n}")
        if l < 0 or n < 0 or l > n:
            return 0
        return self.values[n][l]

    def row_polynomial(self, n: int) -> Polynomial:
        """Sum over l of T(n, l) x^l."""
        return Polynomial(tuple(Fraction(v) for v in self.values[n]))


@lru_cache(maxsize=None)
def stirling_triangle(kind: StirlingKind, max_n: int = TRIANGLE_SIZE) -> StirlingTriangle:
    return StirlingTriangle.build(kind, max_n)


def precompute_triangles(max_n: int) -> None:
    """Build both shared triangles before any parallel work starts."""
    for kind in StirlingKind:
        _triangle_for(kind, max_n)


def _triangle_for(kind: StirlingKind, n: int) -> StirlingTriangle:
    size = TRIANGLE_SIZE
    while size < n:
        size *= 2
    return stirling_triangle(kind, size)


def stirling_first_signed(n: int, l: int) -> int:
    """Coefficient of x^l in the falling factorial (x)_n."""
    if l > n or l < 0:
        return 0
    return _triangle_for(StirlingKind.FIRST_SIGNED, n)(n, l)


def stirling_second(l: int, n: int) -> int:
    """S2(l, n): partitions of an l-set into n nonempty blocks."""
    if n > l or n < 0:
        return 0
    return _triangle_for(StirlingKind.SECOND, l)(l, n)


def binomial(n: int, m: int) -> int:
    """Generalized C(n, m) = (n)_m / m! for any integer n."""
    if m < 0:
        return 0
    return math.prod(n - i for i in range(m)) // math.factorial(m)


def multinomial(n: int, parts: Sequence[int]) -> int:
    if sum(parts) != n or any(p < 0 for p in parts):
        raise MalformedCompositionError(f"parts {list(parts)} do not form a composition of {n}")
    return math.factorial(n) // math.prod(math.factorial(p) for p in parts)


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Ordered k-tuples of nonnegative integers summing to n."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for tail in compositions(n - head, k - 1):
            yield (head,) + tail


def falling_factorial(a: Scalar, n: int) -> Fraction:
    return math.prod((Fraction(a) - i for i in range(n)), start=Fraction(1))


def rising_factorial(a: Scalar, n: int) -> Fraction:
    """a(a+1)...(a+n-1)"""
    return math.prod((Fraction(a) + i for i in range(n)), start=Fraction(1))
