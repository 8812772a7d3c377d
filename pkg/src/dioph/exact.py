"""Exact arithmetic: integer square roots, quadratic surds and small rational matrices.

Rationals are :class:`fractions.Fraction`; nothing in this module ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]


def sqrt_exact(n: int) -> int | None:
    """Return ``s`` with ``s*s == n`` if ``n`` is a perfect square, else ``None``."""
    if n < 0:
        raise ValueError(f"sqrt_exact: negative input {n}")
    s = isqrt(n)
    return s if s * s == n else None


def is_square(n: int) -> bool:
    return n >= 0 and sqrt_exact(n) is not None


def squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n = f*f*r`` with ``r`` squarefree and return ``(f, r)``.

    Trial division; only used for display of radicands, which stay small.
    """
    if n <= 0:
        raise ValueError("squarefree_split expects a positive integer")
    f, r, p = 1, n, 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            f *= p
        p += 1 if p == 2 else 2
    return f, r


# ---------------------------------------------------------------------------
# Quadratic surds


@dataclass(frozen=True)
class Surd:
    """The number ``q0 + q1*sqrt(radicand)`` in Q(sqrt(radicand)).

    The radicand is stored as given (12 stays 12). Arithmetic between surds with
    different radicands raises ``ValueError``.
    """

    q0: Fraction
    q1: Fraction
    radicand: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "q0", Fraction(self.q0))
        object.__setattr__(self, "q1", Fraction(self.q1))
        if self.radicand <= 0 or is_square(self.radicand):
            raise ValueError(f"radicand must be a positive non-square, got {self.radicand}")

    @classmethod
    def rational(cls, q: Scalar, radicand: int) -> Surd:
        return cls(Fraction(q), Fraction(0), radicand)

    def _coerce(self, other: object) -> Surd | None:
        if isinstance(other, Surd):
            if other.radicand != self.radicand:
                raise ValueError(
                    f"mixed radicands: sqrt({self.radicand}) and sqrt({other.radicand})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Surd(Fraction(other), Fraction(0), self.radicand)
        return None

    def __add__(self, other: object) -> Surd:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Surd(self.q0 + o.q0, self.q1 + o.q1, self.radicand)

    __radd__ = __add__

    def __neg__(self) -> Surd:
        return Surd(-self.q0, -self.q1, self.radicand)

    def __sub__(self, other: object) -> Surd:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> Surd:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> Surd:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.radicand
        return Surd(
            self.q0 * o.q0 + d * self.q1 * o.q1,
            self.q0 * o.q1 + self.q1 * o.q0,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> Surd:
        return Surd(self.q0, -self.q1, self.radicand)

    def norm(self) -> Fraction:
        return self.q0 * self.q0 - self.radicand * self.q1 * self.q1

    def inverse(self) -> Surd:
        n = self.norm()
        if n == 0:
            # only zero has norm 0, because the radicand is not a square
            raise ZeroDivisionError("inverse of zero surd")
        c = self.conjugate()
        return Surd(c.q0 / n, c.q1 / n, self.radicand)

    def __truediv__(self, other: object) -> Surd:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> Surd:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> Surd:
        return surd_pow(self, n)

    def is_rational(self) -> bool:
        return self.q1 == 0

    def is_integer(self) -> bool:
        return self.q1 == 0 and self.q0.denominator == 1

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.q0.numerator

    def __str__(self) -> str:
        return render_surd(self)


def surd_pow(s: Surd, n: int) -> Surd:
    """Exact ``s**n`` for any integer ``n`` (negative powers need a nonzero base)."""
    if n < 0:
        if s.norm() == 0:
            raise ZeroDivisionError("negative power of a non-invertible surd")
        s, n = s.inverse(), -n
    result = Surd(Fraction(1), Fraction(0), s.radicand)
    base = s
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def render_surd(s: Surd) -> str:
    """Render over a common denominator, pulling square factors out of the radicand.

    ``Surd(1, 1/4, 6)`` -> ``(4 + √6)/4``; ``Surd(0, 1, 12)`` -> ``2√3``.
    """
    f, r = squarefree_split(s.radicand)
    q0, q1 = s.q0, s.q1 * f
    if q1 == 0:
        return _render_rat(q0)
    den = q0.denominator * q1.denominator // gcd(q0.denominator, q1.denominator)
    p0, p1 = q0.numerator * (den // q0.denominator), q1.numerator * (den // q1.denominator)
    root = f"√{r}"
    irr = root if abs(p1) == 1 else f"{abs(p1)}{root}"
    if p0 == 0:
        body = ("-" if p1 < 0 else "") + irr
        return body if den == 1 else f"{body}/{den}"
    body = f"{p0} {'-' if p1 < 0 else '+'} {irr}"
    return body if den == 1 else f"({body})/{den}"


def _render_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Small dense matrices over Q


@dataclass(frozen=True)
class MatQ:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[Scalar]]) -> MatQ:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> MatQ:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> MatQ:
        return MatQ(tuple(zip(*self.rows)))

    def __matmul__(self, other: MatQ | Sequence[Scalar]) -> MatQ | tuple[Fraction, ...]:
        if isinstance(other, MatQ):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows))
            return MatQ(
                tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows)
            )
        vec = tuple(other)
        if len(vec) != self.shape[1]:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(vec)}")
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self.rows)

    def __mul__(self, k: Scalar) -> MatQ:
        return MatQ(tuple(tuple(v * k for v in row) for row in self.rows))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MatQ:
        return mat_pow(self, n)

    def det(self) -> Fraction:
        """Determinant by fraction-exact Gaussian elimination."""
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                if f:
                    for k in range(c, n):
                        a[r][k] -= f * a[c][k]
        return det

    def minor(self, i: int, j: int) -> MatQ:
        return MatQ(
            tuple(
                tuple(v for cj, v in enumerate(row) if cj != j)
                for ri, row in enumerate(self.rows)
                if ri != i
            )
        )

    def adjugate(self) -> MatQ:
        n, m = self.shape
        if n != m:
            raise ValueError("adjugate of a non-square matrix")
        if n == 1:
            return MatQ(((Fraction(1),),))
        return MatQ(
            tuple(
                tuple((-1) ** (i + j) * self.minor(j, i).det() for j in range(n)) for i in range(n)
            )
        )

    def inverse(self) -> MatQ:
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular matrix has no inverse")
        return self.adjugate() * (1 / d)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows for v in row)

    def to_int(self) -> tuple[tuple[int, ...], ...]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return tuple(tuple(v.numerator for v in row) for row in self.rows)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(_render_rat(v) for v in r) + "]" for r in self.rows) + "]"


def mat_pow(m: MatQ, n: int) -> MatQ:
    """Exact ``m**n``; ``n < 0`` goes through the adjugate inverse."""
    rows, cols = m.shape
    if rows != cols:
        raise ValueError("power of a non-square matrix")
    if n < 0:
        m, n = m.inverse(), -n
    result = MatQ.identity(rows)
    base = m
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def int_matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    """Integer matrix-vector product without Fraction overhead (hot loops)."""
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)
