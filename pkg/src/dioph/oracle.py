"""Brute-force reference enumerator.

Deliberately shares no code with the solvers: every candidate is checked by
direct substitution, and only the last coordinate is solved for with an
integer square root.
"""

from __future__ import annotations

from itertools import product
from math import isqrt
from typing import Union

from .classify import PellEquation
from .conic import GeneralConic
from .nform import DiagonalForm

BIVARIATE_LIMIT = 10**6
MULTIVARIATE_LIMIT = 10**3


class BoundGuardExceeded(ValueError):
    pass


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _conic_points(A, B, C, D, E, F, bound: int) -> list[tuple[int, int]]:
    out = set()
    for x in range(-bound, bound + 1):
        # C y^2 + (B x + E) y + (A x^2 + D x + F) = 0
        p, q = B * x + E, A * x * x + D * x + F
        if C == 0:
            if p == 0:
                if q == 0:
                    out.update((x, y) for y in range(-bound, bound + 1))
                continue
            if q % p == 0:
                out.add((x, -q // p))
            continue
        s = _isqrt_exact(p * p - 4 * C * q)
        if s is None:
            continue
        for num in (-p + s, -p - s):
            if num % (2 * C) == 0:
                out.add((x, num // (2 * C)))
    return sorted(
        (x, y)
        for x, y in out
        if abs(y) <= bound and A * x * x + B * x * y + C * y * y + D * x + E * y + F == 0
    )


def enumerate_solutions(
    equation: Union[PellEquation, GeneralConic, DiagonalForm], bound: int
) -> list[tuple[int, ...]]:
    """Every integer solution with all ``|coordinates| <= bound``, sorted."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if isinstance(equation, PellEquation):
        if bound > BIVARIATE_LIMIT:
            raise BoundGuardExceeded(f"bound {bound} > {BIVARIATE_LIMIT}")
        return _conic_points(equation.a, 0, -equation.b, 0, 0, equation.c, bound)
    if isinstance(equation, GeneralConic):
        if bound > BIVARIATE_LIMIT:
            raise BoundGuardExceeded(f"bound {bound} > {BIVARIATE_LIMIT}")
        return _conic_points(*equation.coefficients, bound)
    if isinstance(equation, DiagonalForm):
        n = len(equation.coeffs)
        if bound > (BIVARIATE_LIMIT if n == 2 else MULTIVARIATE_LIMIT):
            raise BoundGuardExceeded(f"bound {bound} too large for {n} variables")
        *head, last = equation.coeffs
        out = []
        for xs in product(range(-bound, bound + 1), repeat=n - 1):
            rest = equation.b - sum(a * x * x for a, x in zip(head, xs))
            if rest % last:
                continue
            r = _isqrt_exact(rest // last)
            if r is None or r > bound:
                continue
            out.append(xs + (r,))
            if r:
                out.append(xs + (-r,))
        return sorted(out)
    raise TypeError(f"cannot enumerate {type(equation).__name__}")


enumerate = enumerate_solutions  # noqa: A001
