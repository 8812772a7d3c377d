"""Parse and render second-degree polynomial equations.

Grammar::

    equation := poly "=" poly
    poly     := ["+"|"-"] term {("+"|"-") term}
    term     := integer | [integer] var [pow] [var [pow]]
    pow      := "^" ("1"|"2")
    var      := "x" | "y" | "z" | "x" digits
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

Monomial = tuple[int, ...]


class ParseError(ValueError):
    """A parse failure; ``kind`` is one of degree, unknown-token, empty-side,
    duplicate-equals, missing-equals, unexpected-token, no-quadratic-term."""

    def __init__(self, kind: str, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.kind = kind
        self.position = position


@dataclass(frozen=True)
class ParsedEquation:
    variables: tuple[str, ...]
    terms: tuple[tuple[int, Monomial], ...]

    def coefficient(self, *exps: int) -> int:
        for c, m in self.terms:
            if m == exps:
                return c
        return 0

    def render(self) -> str:
        return render_terms(self.variables, self.terms)


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>x\d+|[xyz])|(?P<pow>\^\d+)|(?P<op>[-+=]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("unknown-token", f"unknown token {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def _var_key(name: str) -> tuple[int, int, str]:
    return (1, int(name[1:]), name) if len(name) > 1 else (0, 0, name)


def parse_equation(text: str) -> ParsedEquation:
    tokens = _tokenize(text)
    eqs = [t for t in tokens if t[1] == "="]
    if not eqs:
        raise ParseError("missing-equals", "equation has no '='", len(text))
    if len(eqs) > 1:
        raise ParseError("duplicate-equals", "more than one '='", eqs[1][2])
    split = tokens.index(eqs[0])
    lhs, rhs = tokens[:split], tokens[split + 1 :]
    if not lhs:
        raise ParseError("empty-side", "left-hand side is empty", eqs[0][2])
    if not rhs:
        raise ParseError("empty-side", "right-hand side is empty", eqs[0][2] + 1)

    raw: list[tuple[int, dict[str, int]]] = []
    for side, sign in ((lhs, 1), (rhs, -1)):
        for coef, powers in _parse_poly(side, text):
            raw.append((sign * coef, powers))

    names = sorted({v for _, p in raw for v in p}, key=_var_key)
    combined: dict[Monomial, int] = {}
    for coef, powers in raw:
        mono = tuple(powers.get(v, 0) for v in names)
        combined[mono] = combined.get(mono, 0) + coef
    terms = tuple(
        sorted(((c, m) for m, c in combined.items() if c != 0), key=lambda t: _mono_key(t[1]))
    )
    if not any(sum(m) == 2 for _, m in terms):
        raise ParseError("no-quadratic-term", "no second-degree term survives", 0)
    used = [i for i, v in enumerate(names) if any(m[i] for _, m in terms)]
    if len(used) != len(names):
        names = [names[i] for i in used]
        terms = tuple((c, tuple(m[i] for i in used)) for c, m in terms)
    return ParsedEquation(tuple(names), terms)


def _parse_poly(tokens: list[tuple[str, str, int]], text: str) -> list[tuple[int, dict[str, int]]]:
    out = []
    i, sign = 0, 1
    if tokens[0][1] in "+-":
        sign = -1 if tokens[0][1] == "-" else 1
        i = 1
    while True:
        if i >= len(tokens):
            pos = tokens[-1][2] + 1
            raise ParseError("unexpected-token", "expected a term after sign", pos)
        first, start = i, tokens[i][2]
        coef = 1
        if tokens[i][0] == "int":
            coef = int(tokens[i][1])
            i += 1
        powers: dict[str, int] = {}
        factors = 0
        while i < len(tokens) and tokens[i][0] == "var":
            name = tokens[i][1]
            e = 1
            i += 1
            if i < len(tokens) and tokens[i][0] == "pow":
                e = int(tokens[i][1][1:])
                i += 1
            powers[name] = powers.get(name, 0) + e
            factors += 1
        if i == first:
            kind, val, pos = tokens[i]
            raise ParseError("unexpected-token", f"unexpected token {val!r}", pos)
        last = tokens[i - 1]
        end = last[2] + len(last[1])
        degree = sum(powers.values())
        if degree > 2 or factors > 2:
            snippet = text[start:end].strip()
            raise ParseError("degree", f"degree {degree} at token `{snippet}`", start)
        if any(e == 0 for e in powers.values()):
            snippet = text[start:end].strip()
            raise ParseError("degree", f"exponent 0 is not allowed at token `{snippet}`", start)
        out.append((sign * coef, powers))
        if i >= len(tokens):
            return out
        kind, val, pos = tokens[i]
        if val not in "+-" or kind != "op":
            raise ParseError("unexpected-token", f"unexpected token {val!r}", pos)
        sign = -1 if val == "-" else 1
        i += 1


def _mono_key(m: Monomial) -> tuple:
    return (-sum(m), tuple(-e for e in m))


def _mono_text(names: Sequence[str], m: Monomial) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "".join(parts)


def render_terms(names: Sequence[str], terms: Sequence[tuple[int, Monomial]]) -> str:
    """Canonical text ``... = 0`` for a list of (coefficient, exponent vector)."""
    pieces = []
    for c, m in sorted((t for t in terms if t[0] != 0), key=lambda t: _mono_key(t[1])):
        mono = _mono_text(names, m)
        mag = abs(c)
        body = mono if mono and mag == 1 else f"{mag}{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return (" ".join(pieces) or "0") + " = 0"


def as_conic(p: ParsedEquation):
    """Bivariate equation as a :class:`~dioph.conic.GeneralConic` (first variable is x)."""
    from .conic import GeneralConic

    if len(p.variables) > 2:
        raise ValueError(f"expected at most 2 variables, got {len(p.variables)}")
    if len(p.variables) == 1:
        p = ParsedEquation(p.variables + ("_",), tuple((c, m + (0,)) for c, m in p.terms))
    mons = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    return GeneralConic(*(p.coefficient(*m) for m in mons))


def as_diagonal(p: ParsedEquation):
    """Equation ``sum a_i x_i^2 + c = 0`` as a :class:`~dioph.nform.DiagonalForm` with ``b = -c``."""
    from .nform import DiagonalForm

    n = len(p.variables)
    coeffs = []
    for i in range(n):
        coeffs.append(p.coefficient(*(2 * (j == i) for j in range(n))))
    squares = {tuple(2 * (j == i) for j in range(n)) for i in range(n)}
    for c, m in p.terms:
        if sum(m) > 0 and m not in squares:
            raise ValueError(
                "equations in 3 or more variables must be diagonal (squares and a constant only)"
            )
    if any(c == 0 for c in coeffs):
        missing = [v for v, c in zip(p.variables, coeffs) if c == 0]
        raise ValueError(f"variables without a square term: {', '.join(missing)}")
    return DiagonalForm(tuple(coeffs), -p.coefficient(*([0] * n)))
