"""Diagonal forms ``sum a_i x_i^2 = b`` in n >= 2 variables.

Automorphs (integer ``M`` with ``M^T D M = D``) are found by identifying
coefficients column by column: column ``h`` must have ``D``-norm ``a_h`` and be
``D``-orthogonal to every earlier column.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import Sequence

from .exact import int_matvec, sqrt_exact

DEFAULT_K = 5
DEFAULT_BOX = 50

Vector = tuple[int, ...]
IntMat = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DiagonalForm:
    coeffs: tuple[int, ...]
    b: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) < 2:
            raise ValueError("a diagonal form needs n >= 2 variables")
        if any(a == 0 for a in self.coeffs):
            raise ValueError("diagonal coefficients must be nonzero")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def mixed_signs(self) -> bool:
        return min(self.coeffs) < 0 < max(self.coeffs)

    def value(self, x: Sequence[int]) -> int:
        return sum(a * v * v for a, v in zip(self.coeffs, x))

    def satisfied_by(self, x: Sequence[int]) -> bool:
        return self.value(x) == self.b

    def __str__(self) -> str:
        from .parsing import render_terms

        names = [f"x{i + 1}" for i in range(self.n)]
        terms = [(a, tuple(2 * (j == i) for j in range(self.n))) for i, a in enumerate(self.coeffs)]
        terms.append((-self.b, (0,) * self.n))
        return render_terms(names, terms)


@dataclass(frozen=True, order=True)
class Automorph:
    matrix: IntMat

    @property
    def n(self) -> int:
        return len(self.matrix)

    def preserves(self, form: DiagonalForm) -> bool:
        """Exact check of ``M^T D M == D``."""
        m, a, n = self.matrix, form.coeffs, self.n
        return all(
            sum(a[k] * m[k][i] * m[k][j] for k in range(n)) == (a[i] if i == j else 0)
            for i in range(n)
            for j in range(n)
        )

    def inverse(self, form: DiagonalForm) -> Automorph:
        # M^-1 = D^-1 M^T D, integral because |det M| = 1
        a, m, n = form.coeffs, self.matrix, self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                num = m[j][i] * a[j]
                if num % a[i]:
                    raise ValueError("matrix is not an automorph of this form")
                row.append(num // a[i])
            rows.append(tuple(row))
        return Automorph(tuple(rows))

    def is_signed_permutation(self) -> bool:
        return all(sum(1 for v in row if v) == 1 and max(map(abs, row)) == 1 for row in self.matrix) and all(
            sum(1 for v in col if v) == 1 for col in zip(*self.matrix)
        )

    def __matmul__(self, other: Automorph) -> Automorph:
        cols = list(zip(*other.matrix))
        return Automorph(tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in self.matrix))


def simplest(automorphs: Sequence[Automorph]) -> Automorph:
    """Representative for display: small entries, few negative signs."""
    return min(
        automorphs,
        key=lambda m: (
            max(abs(v) for r in m.matrix for v in r),
            sum(v < 0 for r in m.matrix for v in r),
            sum(abs(v) for r in m.matrix for v in r),
            m.matrix,
        ),
    )


def vectors_with_norm(coeffs: Sequence[int], target: int, K: int) -> list[Vector]:
    """All ``v`` in ``[-K, K]^n`` with ``sum a_i v_i^2 == target``, lexicographic order.

    Prunes a prefix when the remaining coordinates cannot close the gap.
    """
    n = len(coeffs)
    lo_rest = [0] * (n + 1)
    hi_rest = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        lo_rest[i] = lo_rest[i + 1] + min(0, coeffs[i]) * K * K
        hi_rest[i] = hi_rest[i + 1] + max(0, coeffs[i]) * K * K
    out: list[Vector] = []

    def walk(i: int, partial: int, prefix: list[int]) -> None:
        gap = target - partial
        if not lo_rest[i] <= gap <= hi_rest[i]:
            return
        if i == n:
            out.append(tuple(prefix))
            return
        for v in range(-K, K + 1):
            prefix.append(v)
            walk(i + 1, partial + coeffs[i] * v * v, prefix)
            prefix.pop()

    walk(0, 0, [])
    return out


def automorph_search(form: DiagonalForm, K: int, nontrivial_only: bool = False) -> list[Automorph]:
    """All integer automorphs with entries in ``[-K, K]``, sorted by rows."""
    if K < 1:
        raise ValueError("K must be >= 1")
    a, n = form.coeffs, form.n
    by_norm = {t: vectors_with_norm(a, t, K) for t in set(a)}
    found: list[Automorph] = []

    def bilinear(u: Vector, v: Vector) -> int:
        return sum(ai * x * y for ai, x, y in zip(a, u, v))

    def place(h: int, cols: list[Vector]) -> None:
        if h == n:
            found.append(Automorph(tuple(zip(*cols))))
            return
        for c in by_norm[a[h]]:
            if all(bilinear(c, prev) == 0 for prev in cols):
                cols.append(c)
                place(h + 1, cols)
                cols.pop()

    place(0, [])
    if nontrivial_only:
        found = [m for m in found if not m.is_signed_permutation()]
    return sorted(found)


def _sign_variants(x: Vector):
    nz = [i for i, v in enumerate(x) if v]
    for signs in product((1, -1), repeat=len(nz)):
        y = list(x)
        for i, s in zip(nz, signs):
            y[i] = s * y[i]
        yield tuple(y)


def box_solutions(form: DiagonalForm, bound: int, nonnegative: bool = False) -> list[Vector]:
    *head, last = form.coeffs
    rng = range(0, bound + 1) if nonnegative else range(-bound, bound + 1)
    out = []
    for xs in product(rng, repeat=form.n - 1):
        rest = form.b - sum(c * v * v for c, v in zip(head, xs))
        if rest % last:
            continue
        r = sqrt_exact(rest // last) if rest // last >= 0 else None
        if r is None or r > bound:
            continue
        out.append(xs + (r,))
        if r and not nonnegative:
            out.append(xs + (-r,))
    return sorted(out)


def _descend_once(x: Vector, steps: Sequence[Automorph]) -> Vector | None:
    size = sum(map(abs, x))
    best = None
    for y in _sign_variants(x):
        for m in steps:
            z = int_matvec(m.matrix, y)
            s = sum(map(abs, z))
            if s < size and (best is None or s < sum(map(abs, best))):
                best = z
    return best


def _steps(form: DiagonalForm, automorphs: Sequence[Automorph]) -> list[Automorph]:
    steps = set(automorphs)
    steps.update(m.inverse(form) for m in automorphs)
    return sorted(steps)


def descend(form: DiagonalForm, x: Vector, automorphs: Sequence[Automorph]) -> Vector:
    """Apply automorphs (and their inverses, and sign changes) while the L1 size drops."""
    steps = _steps(form, automorphs)
    while (nxt := _descend_once(x, steps)) is not None:
        x = nxt
    return tuple(abs(v) for v in x)


def nform_fundamentals(
    form: DiagonalForm, bound: int, automorphs: Sequence[Automorph] | None = None, K: int = DEFAULT_K
) -> list[Vector]:
    """Nonnegative solutions in the box that no automorph step makes smaller (L1)."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    if automorphs is None:
        automorphs = automorph_search(form, K, nontrivial_only=True)
    steps = _steps(form, automorphs)
    return [x for x in box_solutions(form, bound, nonnegative=True) if _descend_once(x, steps) is None]


def nform_generate(seed: Sequence[int], M: Automorph, n: int, form: DiagonalForm | None = None) -> Vector:
    """``M^n seed``; negative ``n`` needs the form to invert ``M``."""
    x = tuple(seed)
    if n < 0:
        if form is None:
            raise ValueError("negative powers need the form")
        M, n = M.inverse(form), -n
    for _ in range(n):
        x = int_matvec(M.matrix, x)
    return x


@dataclass(frozen=True)
class NFormSolution:
    form: DiagonalForm
    kind: str  # "empty" | "finite" | "families" | "no-automorph"
    points: tuple[Vector, ...] = ()
    seeds: tuple[Vector, ...] = ()
    automorphs: tuple[Automorph, ...] = ()
    total_automorphs: int = 0
    coverage: tuple[int, int] | None = None
    proven: bool = True
    reason: str = ""

    @property
    def coverage_percent(self) -> float | None:
        if self.coverage is None or self.coverage[1] == 0:
            return None
        return 100 * self.coverage[0] / self.coverage[1]


def definite_solutions(form: DiagonalForm) -> list[Vector]:
    """Complete solution list when every coefficient has the same sign."""
    if form.mixed_signs:
        raise ValueError("form is indefinite")
    sign = 1 if form.coeffs[0] > 0 else -1
    b = sign * form.b
    if b < 0:
        return []
    bound = max(isqrt(b // abs(a)) for a in form.coeffs)
    return box_solutions(form, bound)


def nform_solve(form: DiagonalForm, K: int = DEFAULT_K, box: int = DEFAULT_BOX) -> NFormSolution:
    if not form.mixed_signs:
        pts = tuple(definite_solutions(form))
        return NFormSolution(form, "finite" if pts else "empty", points=pts, reason="definite form")
    autos = automorph_search(form, K)
    nontrivial = tuple(m for m in autos if not m.is_signed_permutation())
    if not nontrivial:
        return NFormSolution(
            form, "no-automorph", total_automorphs=len(autos), proven=False,
            reason=f"no nontrivial automorph within K={K}",
        )
    seeds = tuple(nform_fundamentals(form, box, nontrivial))
    if not seeds:
        return NFormSolution(
            form, "empty", automorphs=nontrivial, total_automorphs=len(autos), proven=False,
            reason=f"no solution with max |x_i| <= {box}",
        )
    sols = box_solutions(form, box)
    seed_set = set(seeds)
    covered = sum(1 for x in sols if descend(form, x, nontrivial) in seed_set)
    return NFormSolution(
        form, "families", seeds=seeds, automorphs=nontrivial, total_automorphs=len(autos),
        coverage=(covered, len(sols)),
    )
