"""Complete solution sets in the finite regimes.

Two cases: a square discriminant ``a*b = k^2``, solved by factoring
``(a x - k y)(a x + k y) = -a c``, and same-sign coefficients, solved by a
bounded scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .classify import PellEquation
from .exact import sqrt_exact

FACTOR_LIMIT = 10**12


class FactorizationBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SameSignEquation:
    """``a x^2 + b y^2 + c = 0`` with ``a*b >= 0``."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a * self.b < 0:
            raise ValueError("SameSignEquation needs a*b >= 0")
        if self.a == 0 and self.b == 0:
            raise ValueError("SameSignEquation needs a nonzero square coefficient")

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * y * y + self.c


@dataclass(frozen=True)
class ParametricLines:
    """Integer points on the line pair ``a x = +-k y``: multiples of each direction."""

    directions: tuple[tuple[int, int], ...]

    def point(self, line: int, t: int) -> tuple[int, int]:
        dx, dy = self.directions[line]
        return t * dx, t * dy


def positive_divisors(n: int, limit: int = FACTOR_LIMIT) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("zero has no finite divisor list")
    if n > limit:
        raise FactorizationBoundExceeded(f"factorization bound exceeded: |{n}| > {limit}")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def solve_square_discriminant(
    eq: PellEquation, k: int, limit: int = FACTOR_LIMIT
) -> list[tuple[int, int]]:
    """All integer roots of ``a x^2 - b y^2 + c = 0`` when ``a*b == k^2``."""
    a, c = eq.a, eq.c
    if k < 1 or k * k != eq.a * eq.b:
        raise ValueError(f"k={k} is not the square root of a*b={eq.a * eq.b}")
    if c == 0:
        raise ValueError("c = 0 is a degenerate line pair; use degenerate_lines")
    n = -a * c
    out = set()
    for d in positive_divisors(n, limit):
        for dd in (d, -d):
            e = n // dd
            # x = (d + e) / 2a and y = (e - d) / 2k must both be integral
            if (dd + e) % (2 * a) or (e - dd) % (2 * k):
                continue
            out.add(((dd + e) // (2 * a), (e - dd) // (2 * k)))
    return sorted(out)


def degenerate_lines(eq: PellEquation, k: int) -> ParametricLines:
    """Integer directions of ``a x - k y = 0`` and ``a x + k y = 0`` (the ``c = 0`` case)."""
    if eq.c != 0 or k * k != eq.a * eq.b:
        raise ValueError("degenerate_lines needs c = 0 and k^2 = a*b")
    g = gcd(eq.a, k)
    return ParametricLines(((k // g, eq.a // g), (k // g, -(eq.a // g))))


def solve_same_sign(eq: SameSignEquation) -> list[tuple[int, int]]:
    a, b, c = eq.a, eq.b, eq.c
    if a < 0 or b < 0:
        a, b, c = -a, -b, -c
    if c > 0:
        return []
    if a == 0 or b == 0:
        # one square is missing: the other variable is free whenever a root exists
        coef = a or b
        if (-c) % coef == 0 and sqrt_exact(-c // coef) is not None:
            raise ValueError("solution set is infinite: one variable does not occur")
        return []
    out = []
    for x in range(-isqrt(-c // a), isqrt(-c // a) + 1):
        rest = -c - a * x * x
        if rest < 0 or rest % b:
            continue
        y = sqrt_exact(rest // b)
        if y is None:
            continue
        out.append((x, y))
        if y:
            out.append((x, -y))
    return sorted(out)
