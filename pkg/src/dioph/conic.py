"""General bivariate conics ``A x^2 + B xy + C y^2 + D x + E y + F = 0``.

The conic is brought to ``a u^2 + b v^2 + c = 0`` by completing squares:

    u = (2A x + B y + D) / g_u,     v = (Delta y - (2AE - BD)) / g_v,
    Delta = B^2 - 4AC,

with ``g_u``, ``g_v`` the contents of the two linear forms. Solutions of the
canonical equation are pulled back through the inverse substitution and kept
only when they land on integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import gcd
from typing import Sequence

from . import pell
from .classify import (
    Classification,
    FiniteSameSign,
    PellEquation,
)
from .exact import MatQ, int_matmul, int_matvec
from .finite import SameSignEquation, solve_same_sign

Point = tuple[int, int]
IntMat2 = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class GeneralConic:
    A: int
    B: int
    C: int
    D: int
    E: int
    F: int

    def __post_init__(self) -> None:
        if self.A == 0 and self.B == 0 and self.C == 0:
            raise ValueError("not a second-degree equation: A = B = C = 0")

    def __call__(self, x: int, y: int) -> int:
        return (
            self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F
        )

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def substitute(self, L: IntMat2) -> GeneralConic:
        """The conic in ``(s, t)`` where ``(x, y) = L (s, t)``."""
        (l11, l12), (l21, l22) = L
        A, B, C, D, E, F = self.coefficients
        return GeneralConic(
            A * l11 * l11 + B * l11 * l21 + C * l21 * l21,
            2 * A * l11 * l12 + B * (l11 * l22 + l12 * l21) + 2 * C * l21 * l22,
            A * l12 * l12 + B * l12 * l22 + C * l22 * l22,
            D * l11 + E * l21,
            D * l12 + E * l22,
            F,
        )

    def __str__(self) -> str:
        from .parsing import render_terms

        mons = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
        return render_terms(["x", "y"], list(zip(self.coefficients, mons)))


@dataclass(frozen=True)
class CanonicalEquation:
    """``a u^2 + b v^2 + c = 0`` with ``a > 0`` and ``b != 0``."""

    a: int
    b: int
    c: int

    def __call__(self, u: int, v: int) -> int:
        return self.a * u * u + self.b * v * v + self.c

    @property
    def same_sign(self) -> bool:
        return self.b > 0

    def as_pell(self) -> PellEquation:
        if self.b > 0:
            raise ValueError("same-sign canonical equation has no Pell form")
        return PellEquation(self.a, -self.b, self.c)

    def __str__(self) -> str:
        from .parsing import render_terms

        return render_terms(["u", "v"], [(self.a, (2, 0)), (self.b, (0, 2)), (self.c, (0, 0))])


@dataclass(frozen=True)
class AffineMap2:
    """``(u, v) = matrix (x, y) + offset`` with integer entries.

    ``divisors`` records the contents ``(g_u, g_v)`` removed from the raw
    completed-square forms. The inverse is rational; an integer ``(u, v)`` maps
    back to integers exactly when each row ``(p u + q v + r)`` is divisible by
    its denominator ``d``.
    """

    matrix: IntMat2
    offset: Point
    divisors: Point = (1, 1)

    def forward(self, p: Point) -> Point:
        u, v = int_matvec(self.matrix, p)
        return u + self.offset[0], v + self.offset[1]

    @property
    def homogeneous(self) -> MatQ:
        (m11, m12), (m21, m22) = self.matrix
        return MatQ.of([[m11, m12, self.offset[0]], [m21, m22, self.offset[1]], [0, 0, 1]])

    @property
    def inverse(self) -> MatQ:
        return self.homogeneous.inverse()

    @property
    def inverse_rows(self) -> tuple[tuple[int, int, int, int], ...]:
        """``(p, q, r, d)`` per original coordinate: ``x = (p u + q v + r) / d``."""
        rows = []
        for row in self.inverse.rows[:2]:
            d = _fold(lambda acc, v: acc * v.denominator // gcd(acc, v.denominator), row, 1)
            rows.append(tuple(int(v * d) for v in row) + (d,))
        return tuple(rows)

    @property
    def modulus(self) -> int:
        return _fold(lambda acc, r: acc * r[3] // gcd(acc, r[3]), self.inverse_rows, 1)

    @property
    def is_identity(self) -> bool:
        return self.matrix == ((1, 0), (0, 1)) and self.offset == (0, 0)

    def describe(self) -> tuple[str, str]:
        """Forward substitution and inverse as text."""
        fwd = [
            _linear_text(r, o, 1, ("x", "y")) for r, o in zip(self.matrix, self.offset)
        ]
        inv = [_linear_text(row[:2], row[2], row[3], ("u", "v")) for row in self.inverse_rows]
        return (
            f"u = {fwd[0]}, v = {fwd[1]}",
            f"x = {inv[0]}, y = {inv[1]}",
        )


def _linear_text(coefs: Sequence[int], const: int, den: int, names: Sequence[str]) -> str:
    parts = []
    for c, n in list(zip(coefs, names)) + [(const, "")]:
        if c == 0:
            continue
        mag = abs(c)
        body = n if n and mag == 1 else f"{mag}{n}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts) or "0"
    return text if den == 1 else f"({text})/{den}"


def back_map(amap: AffineMap2, point: Point) -> Point | None:
    """Original-variable preimage of a canonical point, or ``None`` if not integral."""
    u, v = point
    out = []
    for p, q, r, d in amap.inverse_rows:
        num = p * u + q * v + r
        if num % d:
            return None
        out.append(num // d)
    return out[0], out[1]


@dataclass(frozen=True)
class Reduction:
    conic: GeneralConic
    equation: CanonicalEquation
    map: AffineMap2

    def __iter__(self):
        return iter((self.equation, self.map))

    @property
    def degenerate(self) -> bool:
        return self.equation.c == 0


def _content(values: Sequence[int], lead: int) -> int:
    g = _fold(gcd, values, 0)
    return -g if lead < 0 else g


def reduce(conic: GeneralConic) -> Reduction:
    delta = conic.discriminant
    if delta == 0:
        raise ValueError("parabolic case unsupported (B^2 - 4AC = 0)")
    # x = L (s, t), then s, t get completed
    if conic.A != 0:
        L: IntMat2 = ((1, 0), (0, 1))
    elif conic.C != 0:
        L = ((0, 1), (1, 0))
    else:
        L = ((1, 0), (1, 1))
    work = conic.substitute(L)
    A, B, C, D, E, F = work.coefficients
    assert A != 0 and work.discriminant == delta
    (l11, l12), (l21, l22) = L
    L_inv = ((l22, -l12), (-l21, l11))
    if l11 * l22 - l12 * l21 == -1:
        L_inv = ((-l22, l12), (l21, -l11))

    u_raw, u_const = (2 * A, B), D
    v_raw, v_const = (0, delta), -(2 * A * E - B * D)
    g_u = _content([*u_raw, u_const], 2 * A)
    g_v = _content([*v_raw, v_const], delta)
    K = delta * (4 * A * F - D * D) + (2 * A * E - B * D) ** 2

    coeffs = [delta * g_u * g_u, -g_v * g_v, K]
    g = _fold(gcd, coeffs, 0)
    a, b, c = (x // g for x in coeffs)
    if a < 0:
        a, b, c = -a, -b, -c

    st_matrix = ((u_raw[0] // g_u, u_raw[1] // g_u), (v_raw[0] // g_v, v_raw[1] // g_v))
    matrix = int_matmul(st_matrix, L_inv)
    amap = AffineMap2(matrix, (u_const // g_u, v_const // g_v), (abs(g_u), abs(g_v)))
    return Reduction(conic, CanonicalEquation(a, b, c), amap)


@dataclass(frozen=True)
class AffineRecurrence:
    """Homogeneous 3x3 step ``(x, y, 1) -> M (x, y, 1)`` acting on ``seeds``."""

    matrix: MatQ
    seeds: tuple[Point, ...] = ()

    def step(self, p: Point, n: int = 1) -> tuple[Fraction, Fraction]:
        x, y, _ = (self.matrix**n) @ (p[0], p[1], 1)
        return x, y


def affine_automorphism(
    amap: AffineMap2, A: pell.Automorphism | IntMat2 | MatQ, seeds: Sequence[Point] = ()
) -> AffineRecurrence:
    """Conjugate a canonical automorphism back to the original variables: ``T^-1 Â T``."""
    if isinstance(A, pell.Automorphism):
        m = A.int_matrix
    elif isinstance(A, MatQ):
        m = A.rows
    else:
        m = A
    hat = MatQ.of([[m[0][0], m[0][1], 0], [m[1][0], m[1][1], 0], [0, 0, 1]])
    T = amap.homogeneous
    return AffineRecurrence(T.inverse() @ hat @ T, tuple(seeds))


def orbit_period(amap: AffineMap2, A: IntMat2, start: Point) -> tuple[int, tuple[int, ...]]:
    """Period of ``A^n start`` modulo the map's denominators, and the residues ``r``
    (``0 <= r < period``) whose members pull back to integers.

    Because ``det A = 1`` the orbit modulo ``L`` is a pure cycle, so one period
    decides integrality for every ``n`` in Z.
    """
    L = amap.modulus
    s0 = (start[0] % L, start[1] % L)
    p, residues, n = start, [], 0
    while True:
        if back_map(amap, p) is not None:
            residues.append(n)
        p = int_matvec(A, p)
        n += 1
        if (p[0] % L, p[1] % L) == s0:
            return n, tuple(residues)


def orbit_key(A: IntMat2, A_inv: IntMat2, p: Point) -> tuple[Point, int]:
    """Least point of the A-orbit of ``p`` under ``(|x|, x, y)`` and the offset
    ``j`` with ``A^j p`` equal to it."""
    key = lambda q: (abs(q[0]), q[0], q[1])  # noqa: E731
    j = 0
    while True:
        fwd, bwd = int_matvec(A, p), int_matvec(A_inv, p)
        best = min((key(p), 0), (key(fwd), 1), (key(bwd), -1))
        if best[1] == 0:
            return p, j
        p = fwd if best[1] == 1 else bwd
        j += best[1]


@dataclass(frozen=True)
class ConicFamily:
    """Integer solutions ``back_map(A^(step*n) canonical_seed)``, ``n`` in Z."""

    seed: Point
    canonical_seed: Point
    step: int
    canonical_matrix: IntMat2
    recurrence: MatQ
    epsilon: int
    sign: int

    def members(self, amap: AffineMap2, count: int) -> list[Point]:
        out, p = [], self.canonical_seed
        for _ in range(count):
            q = back_map(amap, p)
            assert q is not None, "orbit member failed the integrality certificate"
            out.append(q)
            p = int_matvec(self.canonical_matrix, p)
        return out

    def member(self, n: int) -> Point:
        x, y, one = (self.recurrence**n) @ (self.seed[0], self.seed[1], 1)
        assert one == 1 and x.denominator == 1 and y.denominator == 1
        return x.numerator, y.numerator


@dataclass
class ConicSolution:
    conic: GeneralConic
    reduction: Reduction
    classification: Classification | None
    kind: str
    points: tuple[Point, ...] = ()
    families: tuple[ConicFamily, ...] = ()
    lines: tuple[tuple[Point, Point], ...] = ()
    automorphism: pell.Automorphism | None = None
    recurrences: tuple[AffineRecurrence, ...] = ()
    proven: bool = True
    reason: str = ""
    pell_solution: pell.PellSolution | None = None
    notes: list[str] = field(default_factory=list)


def _lines_through_map(amap: AffineMap2, directions) -> tuple[tuple[Point, Point], ...]:
    """Integer points ``t * dir`` (canonical) that pull back to integers, as ``base + k*step``."""
    L = amap.modulus
    out = []
    for du, dv in directions:
        for t0 in range(L):
            base = back_map(amap, (t0 * du, t0 * dv))
            if base is None:
                continue
            nxt = back_map(amap, ((t0 + L) * du, (t0 + L) * dv))
            assert nxt is not None
            out.append((base, (nxt[0] - base[0], nxt[1] - base[1])))
    return tuple(out)


def solve_conic(conic: GeneralConic, max_scan: int = pell.MAX_SCAN) -> ConicSolution:
    red = reduce(conic)
    can, amap = red.equation, red.map

    def pulled(points) -> tuple[Point, ...]:
        return tuple(sorted(q for q in (back_map(amap, p) for p in points) if q is not None))

    if can.same_sign:
        cls = FiniteSameSign()
        pts = pulled(solve_same_sign(SameSignEquation(can.a, can.b, can.c)))
        kind = "finite" if pts else "empty"
        return ConicSolution(conic, red, cls, kind, points=pts, reason="definite form")

    ps = pell.solve(can.as_pell(), max_scan=max_scan)
    res = ps.result
    if isinstance(res, pell.Empty):
        return ConicSolution(
            conic, red, ps.classification, "empty", proven=res.proven, reason=res.reason,
            pell_solution=ps,
        )
    if isinstance(res, pell.Finite):
        pts = pulled(res.points)
        return ConicSolution(
            conic, red, ps.classification, "finite" if pts else "empty", points=pts,
            reason="" if pts else "no canonical root pulls back to integers", pell_solution=ps,
        )
    if isinstance(res, pell.Lines):
        lines = _lines_through_map(amap, res.lines.directions)
        # (0, 0) lies on both canonical lines, so no pulled-back line means no points
        return ConicSolution(
            conic, red, ps.classification, "parametric-lines" if lines else "empty",
            lines=lines, pell_solution=ps,
        )

    A = res.automorphism
    Am, Ai = A.int_matrix, A.int_inverse
    fams: list[ConicFamily] = []
    seen: set = set()
    for sign in (1, -1):
        for fam in res.families:
            start = (sign * fam.start[0], sign * fam.start[1])
            period, residues = orbit_period(amap, Am, start)
            rep, j = orbit_key(Am, Ai, start)
            step_m = Am
            for _ in range(period - 1):
                step_m = int_matmul(step_m, Am)
            rec = affine_automorphism(amap, step_m).matrix
            for r in residues:
                key = (rep, period, (r + j) % period)
                if key in seen:
                    continue
                seen.add(key)
                cseed = A.apply(start, r)
                oseed = back_map(amap, cseed)
                assert oseed is not None
                fams.append(ConicFamily(oseed, cseed, period, step_m, rec, fam.epsilon, sign))

    by_step: dict[int, list[ConicFamily]] = {}
    for f in fams:
        by_step.setdefault(f.step, []).append(f)
    recs = tuple(
        AffineRecurrence(fs[0].recurrence, tuple(f.seed for f in fs))
        for _, fs in sorted(by_step.items())
    )
    kind = "families" if fams else "empty"
    reason = "" if fams else "no orbit member pulls back to integers"
    return ConicSolution(
        conic, red, ps.classification, kind, families=tuple(fams), automorphism=A,
        recurrences=recs, proven=res.complete, reason=reason, pell_solution=ps,
    )
