"""Solution families of ``a x^2 - b y^2 + c = 0`` generated by an automorphism.

The automorphism is ``A = [[alpha, (b/a) gamma], [gamma, alpha]]`` where
``(alpha, gamma)`` is the smallest positive solution of ``a alpha^2 - b gamma^2 = a``
with integral matrix entries. Every solution lies in the orbit
``A^n (x0, +-y0)`` of a descent-minimal seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .classify import (
    Classification,
    FiniteSquareDiscriminant,
    InfiniteFamilyCandidate,
    NoSolutionCongruence,
    NoSolutionDivisibility,
    PellEquation,
    classify,
    congruence_certificate,
    default_moduli,
)
from .exact import MatQ, Surd, int_matvec, mat_pow, sqrt_exact, surd_pow
from .finite import ParametricLines, degenerate_lines, solve_square_discriminant

MAX_SCAN = 10**6

Point = tuple[int, int]


def pell_fundamental(D: int) -> tuple[int, int]:
    """Fundamental solution of ``u^2 - D v^2 = 1`` from the continued fraction of sqrt(D)."""
    a0 = isqrt(D)
    if a0 * a0 == D:
        raise ValueError(f"D={D} is a perfect square")
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - D * k * k != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


@dataclass(frozen=True)
class Automorphism:
    a: int
    b: int
    alpha0: int
    gamma0: int

    def __post_init__(self) -> None:
        if self.a * self.alpha0**2 - self.b * self.gamma0**2 != self.a:
            raise ValueError("(alpha0, gamma0) does not solve a*alpha^2 - b*gamma^2 = a")
        if self.alpha0 * self.gamma0 == 0:
            raise ValueError("alpha0 * gamma0 must be nonzero")
        if (self.b * self.gamma0) % self.a:
            raise ValueError("b*gamma0/a is not an integer")

    @property
    def beta0(self) -> int:
        return self.b * self.gamma0 // self.a

    @property
    def int_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.alpha0, self.beta0), (self.gamma0, self.alpha0))

    @property
    def int_inverse(self) -> tuple[tuple[int, int], tuple[int, int]]:
        # det = 1, so the inverse is the adjugate
        return ((self.alpha0, -self.beta0), (-self.gamma0, self.alpha0))

    @property
    def matrix(self) -> MatQ:
        return MatQ.of(self.int_matrix)

    def apply(self, p: Point, n: int = 1) -> Point:
        m = self.int_matrix if n >= 0 else self.int_inverse
        for _ in range(abs(n)):
            p = int_matvec(m, p)
        return p

    def preserves_form(self) -> bool:
        m = self.matrix
        form = MatQ.of([[self.a, 0], [0, -self.b]])
        return m.transpose() @ form @ m == form


def resolvent(a: int, b: int) -> Automorphism:
    """Smallest ``(alpha, gamma)``, ``gamma >= 1``, with ``a alpha^2 - b gamma^2 = a`` and ``a | b gamma``.

    With ``g = gcd(a, b)`` the integrality condition forces ``gamma = (a/g) t`` and
    the equation becomes ``alpha^2 - (a b / g^2) t^2 = 1``, so the answer comes from
    the fundamental Pell solution for ``ab/g^2``.
    """
    if a < 1 or b < 1:
        raise ValueError("resolvent needs a, b >= 1")
    if sqrt_exact(a * b) is not None:
        raise ValueError(f"a*b={a * b} is a perfect square; no automorphism of infinite order")
    g = gcd(a, b)
    u, t = pell_fundamental(a * b // (g * g))
    return Automorphism(a, b, u, (a // g) * t)


def search_bound(eq: PellEquation) -> int:
    """Largest ``y`` a descent-minimal seed can have.

    Classical fundamental-solution bound for ``X^2 - D y^2 = N`` with ``X = a x``,
    ``D = a b``, ``N = -a c``: ``y <= sqrt(|N| (u1 + 1) / (2 D))``, plus one for slack.
    """
    D = eq.a * eq.b
    u1, _ = pell_fundamental(D)
    num, den = abs(eq.a * eq.c) * (u1 + 1), 2 * D
    q = -(-num // den)  # ceil(num / den)
    r = isqrt(q)
    if r * r < q:
        r += 1
    return r + 1


def _solutions_at(eq: PellEquation, y: int) -> int | None:
    rhs = eq.b * y * y - eq.c
    if rhs < 0 or rhs % eq.a:
        return None
    return sqrt_exact(rhs // eq.a)


def is_descent_minimal(p: Point, A: Automorphism) -> bool:
    x, y = p
    inv = A.int_inverse
    return all(abs(int_matvec(inv, (x, s * y))[0]) >= x for s in (1, -1))


def fundamental_solutions(
    eq: PellEquation, A: Automorphism, max_scan: int | None = None
) -> list[Point]:
    """Descent-minimal solutions with ``x, y >= 0``, sorted by ``x``."""
    if (A.a, A.b) != (eq.a, eq.b):
        raise ValueError("automorphism belongs to a different form")
    limit = search_bound(eq)
    if max_scan is not None:
        limit = min(limit, max_scan)
    seeds = []
    for y in range(limit + 1):
        x = _solutions_at(eq, y)
        if x is not None and is_descent_minimal((x, y), A):
            seeds.append((x, y))
    return sorted(seeds)


@dataclass(frozen=True)
class SolutionFamily:
    """The orbit ``{A^n (x0, epsilon*y0) : n in Z}``."""

    seed: Point
    epsilon: int
    automorphism: Automorphism

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")

    @property
    def start(self) -> Point:
        return self.seed[0], self.epsilon * self.seed[1]

    def members(self, count: int, positive: bool = False) -> list[Point]:
        out, p = [], self.start
        for _ in range(count):
            out.append((abs(p[0]), abs(p[1])) if positive else p)
            p = self.automorphism.apply(p)
        return out


def generate(family: SolutionFamily, n: int) -> Point:
    """``A^n (x0, epsilon*y0)`` via exact matrix power."""
    x, y = mat_pow(family.automorphism.matrix, n) @ family.start
    return x.numerator, y.numerator


@dataclass(frozen=True)
class ClosedForm:
    """``x_n = cx * lam^n + cx' * lam'^n`` and likewise for ``y_n``; primes are conjugates."""

    lam: Surd
    coeff_x_plus: Surd
    coeff_x_minus: Surd
    coeff_y_plus: Surd
    coeff_y_minus: Surd

    def evaluate(self, n: int) -> Point:
        lp, lm = surd_pow(self.lam, n), surd_pow(self.lam.conjugate(), n)
        x = self.coeff_x_plus * lp + self.coeff_x_minus * lm
        y = self.coeff_y_plus * lp + self.coeff_y_minus * lm
        return int(x), int(y)


def closed_form(family: SolutionFamily) -> ClosedForm:
    """Diagonalise ``A`` over Q(sqrt(ab)).

    Eigenvalues are ``alpha +- (gamma/a) sqrt(ab)`` with eigenvectors proportional
    to ``(sqrt(ab)/a, 1)`` and ``(-sqrt(ab)/a, 1)``; expanding the start point in
    that basis gives the four coefficients.
    """
    A = family.automorphism
    D = A.a * A.b
    x0, y0 = family.start
    lam = Surd(A.alpha0, Fraction(A.gamma0, A.a), D)
    cx = Surd(Fraction(x0, 2), Fraction(y0, 2 * A.a), D)
    cy = Surd(Fraction(y0, 2), Fraction(x0, 2 * A.b), D)
    return ClosedForm(lam, cx, cx.conjugate(), cy, cy.conjugate())


# ---------------------------------------------------------------------------
# Solution sets


@dataclass(frozen=True)
class Empty:
    certificate: Classification | None
    proven: bool = True
    reason: str = ""
    kind = "empty"


@dataclass(frozen=True)
class Finite:
    points: tuple[Point, ...]
    kind = "finite"


@dataclass(frozen=True)
class Families:
    automorphism: Automorphism
    families: tuple[SolutionFamily, ...]
    complete: bool = True
    kind = "families"

    @property
    def seeds(self) -> list[Point]:
        return sorted({f.seed for f in self.families})


@dataclass(frozen=True)
class Lines:
    lines: ParametricLines
    kind = "parametric-lines"


SolutionSet = Union[Empty, Finite, Families, Lines]


@dataclass
class PellSolution:
    equation: PellEquation
    classification: Classification
    result: SolutionSet
    search_limit: int | None = None
    notes: list[str] = field(default_factory=list)


def solve(eq: PellEquation, max_scan: int = MAX_SCAN) -> PellSolution:
    cls = classify(eq)
    if isinstance(cls, NoSolutionDivisibility):
        return PellSolution(eq, cls, Empty(cls, True, f"gcd(a, b) = {cls.g} does not divide c"))
    if isinstance(cls, FiniteSquareDiscriminant):
        if eq.c == 0:
            return PellSolution(eq, cls, Lines(degenerate_lines(eq, cls.k)))
        pts = solve_square_discriminant(eq, cls.k)
        if not pts:
            return PellSolution(eq, cls, Empty(cls, True, "no divisor pair yields an integer root"))
        return PellSolution(eq, cls, Finite(tuple(pts)))
    assert isinstance(cls, InfiniteFamilyCandidate)
    if eq.c == 0:
        # a x^2 = b y^2 with ab not a square forces x = y = 0
        return PellSolution(eq, cls, Finite(((0, 0),)))
    m = congruence_certificate(eq, default_moduli(eq))
    if m is not None:
        cert = NoSolutionCongruence(m)
        return PellSolution(eq, cert, Empty(cert, True, f"no roots modulo {m}"))
    A = resolvent(eq.a, eq.b)
    bound = search_bound(eq)
    limit = min(bound, max_scan)
    complete = limit >= bound
    seeds = fundamental_solutions(eq, A, max_scan=limit)
    if not seeds:
        reason = (
            f"no seed with y <= {limit} (proven seed bound)"
            if complete
            else f"bound exhausted at y <= {limit} below the proven bound {bound}, unproven"
        )
        return PellSolution(eq, cls, Empty(None, complete, reason), limit)
    fams = []
    for s in seeds:
        fams.append(SolutionFamily(s, 1, A))
        if s[1] != 0:
            fams.append(SolutionFamily(s, -1, A))
    return PellSolution(eq, cls, Families(A, tuple(fams), complete), limit)
