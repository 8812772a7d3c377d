"""Regime classification and congruence certificates for ``a x^2 - b y^2 + c = 0``."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

from .exact import sqrt_exact

DEFAULT_MODULI = (3, 4, 5, 7, 8, 9, 11, 13, 16)
MODULUS_CAP = 10**4


@dataclass(frozen=True)
class PellEquation:
    """``a x^2 - b y^2 + c = 0`` with ``a, b >= 1``."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise ValueError(f"PellEquation needs a, b >= 1, got a={self.a}, b={self.b}")

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x - self.b * y * y + self.c

    def satisfied_by(self, x: int, y: int) -> bool:
        return self(x, y) == 0

    def __str__(self) -> str:
        from .parsing import render_terms

        return render_terms(["x", "y"], [(self.a, (2, 0)), (-self.b, (0, 2)), (self.c, (0, 0))])


@dataclass(frozen=True)
class NoSolutionDivisibility:
    g: int
    label = "no-solution-divisibility"


@dataclass(frozen=True)
class NoSolutionCongruence:
    modulus: int
    label = "no-solution-congruence"


@dataclass(frozen=True)
class FiniteSquareDiscriminant:
    k: int
    label = "finite-square-discriminant"


@dataclass(frozen=True)
class FiniteSameSign:
    label = "finite-same-sign"


@dataclass(frozen=True)
class InfiniteFamilyCandidate:
    D: int
    label = "infinite-family-candidate"


Classification = Union[
    NoSolutionDivisibility,
    NoSolutionCongruence,
    FiniteSquareDiscriminant,
    FiniteSameSign,
    InfiniteFamilyCandidate,
]


def classify(eq: PellEquation) -> Classification:
    g = gcd(eq.a, eq.b)
    if eq.c % g:
        return NoSolutionDivisibility(g)
    k = sqrt_exact(eq.a * eq.b)
    if k is not None:
        return FiniteSquareDiscriminant(k)
    return InfiniteFamilyCandidate(eq.a * eq.b)


def solvable_mod(a: int, b: int, c: int, m: int) -> bool:
    """Whether ``a x^2 - b y^2 + c == 0`` has a root in ``(Z/m)^2``.

    Equivalent to scanning all ``m^2`` residue pairs, but done as an
    intersection of two residue sets.
    """
    squares = {x * x % m for x in range(m)}
    left = {a * s % m for s in squares}
    right = {(b * s - c) % m for s in squares}
    return not left.isdisjoint(right)


def congruence_certificate(eq: PellEquation, moduli: Iterable[int]) -> int | None:
    """First modulus in ``moduli`` with no residue solution, or ``None``."""
    moduli = list(moduli)
    if not moduli:
        raise ValueError("congruence_certificate needs at least one modulus")
    for m in moduli:
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        if not solvable_mod(eq.a, eq.b, eq.c, m):
            return m
    return None


def default_moduli(eq: PellEquation) -> list[int]:
    mods = set(DEFAULT_MODULI)
    m = 4 * eq.a * eq.b
    if m <= MODULUS_CAP:
        mods.add(m)
    return sorted(mods)


def check_certificate(eq: PellEquation, cert: Classification) -> bool:
    """Independently re-check an insolvability or finiteness certificate."""
    if isinstance(cert, NoSolutionDivisibility):
        return cert.g > 1 and eq.a % cert.g == 0 and eq.b % cert.g == 0 and eq.c % cert.g != 0
    if isinstance(cert, NoSolutionCongruence):
        m = cert.modulus
        return all((eq.a * x * x - eq.b * y * y + eq.c) % m for x in range(m) for y in range(m))
    if isinstance(cert, FiniteSquareDiscriminant):
        return cert.k * cert.k == eq.a * eq.b
    if isinstance(cert, InfiniteFamilyCandidate):
        return cert.D == eq.a * eq.b and sqrt_exact(cert.D) is None
    return False
