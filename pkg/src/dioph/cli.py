"""Command line front end: ``dioph solve|classify|closed-form|reduce|automorph|oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import conic as conic_mod
from . import nform, oracle, pell
from .classify import FiniteSameSign, PellEquation, classify, congruence_certificate, default_moduli
from .conic import GeneralConic
from .exact import render_surd
from .finite import SameSignEquation, solve_same_sign
from .parsing import ParseError, ParsedEquation, as_conic, as_diagonal, parse_equation

EXIT_OK, EXIT_USAGE, EXIT_UNPROVEN = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _num(v: int | Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _point(p) -> list[str]:
    return [_num(v) for v in p]


def _matrix(m) -> list[list[str]]:
    return [[_num(v) for v in row] for row in m]


def _mtext(m) -> str:
    return "[" + ", ".join("[" + ", ".join(_num(v) for v in row) + "]" for row in m) + "]"


def _ptext(p) -> str:
    return "(" + ", ".join(str(v) for v in p) + ")"


def pell_form(c: GeneralConic) -> PellEquation | None:
    """``A x^2 + C y^2 + F = 0`` with ``A C < 0``, sign-normalised to ``a x^2 - b y^2 + c``."""
    if c.B or c.D or c.E or c.A * c.C >= 0:
        return None
    if c.A > 0:
        return PellEquation(c.A, -c.C, c.F)
    return PellEquation(-c.A, c.C, -c.F)


def same_sign_form(c: GeneralConic) -> SameSignEquation | None:
    if c.B or c.D or c.E or c.A * c.C <= 0:
        return None
    return SameSignEquation(c.A, c.C, c.F)


def _load(text: str):
    parsed = parse_equation(text)
    if len(parsed.variables) <= 2:
        return parsed, as_conic(parsed)
    return parsed, as_diagonal(parsed)


def _equation_json(parsed: ParsedEquation, eq) -> dict:
    out = {"text": parsed.render(), "variables": list(parsed.variables)}
    if isinstance(eq, GeneralConic):
        out["type"] = "conic"
        out["coefficients"] = dict(zip("ABCDEF", (str(v) for v in eq.coefficients)))
    else:
        out["type"] = "diagonal"
        out["coefficients"] = [str(v) for v in eq.coeffs]
        out["b"] = str(eq.b)
    return out


# ---------------------------------------------------------------------------
# solve


def _solve_pell(eq: PellEquation, args) -> tuple[dict, list[str], int]:
    sol = pell.solve(eq, max_scan=_cap(args.bound, pell.MAX_SCAN))
    res = sol.result
    cls = sol.classification
    lines = [f"classification: {_cls_text(cls)}"]
    data: dict = {"kind": res.kind}
    code = EXIT_OK
    if isinstance(res, pell.Empty):
        data["certificate"] = _cert_json(res)
        lines.append(f"no solutions ({res.reason})" if res.proven else f"no solutions found: {res.reason}")
        code = EXIT_OK if res.proven else EXIT_UNPROVEN
    elif isinstance(res, pell.Finite):
        data["points"] = [_point(p) for p in res.points]
        lines.append(f"{len(res.points)} solutions:")
        lines += [f"  {_ptext(p)}" for p in res.points]
    elif isinstance(res, pell.Lines):
        data["directions"] = [_point(d) for d in res.lines.directions]
        lines.append("infinitely many solutions on two lines through the origin:")
        lines += [f"  t * {_ptext(d)}" for d in res.lines.directions]
    else:
        A = res.automorphism
        data["automorphism"] = _matrix(A.int_matrix)
        data["families"] = [
            {
                "seed": _point(f.seed),
                "epsilon": f.epsilon,
                "matrix": _matrix(A.int_matrix),
                "members": [_point(p) for p in f.members(args.terms, args.positive)],
            }
            for f in res.families
        ]
        if not res.complete:
            data["unproven"] = True
            code = EXIT_UNPROVEN
        lines.append(f"automorphism A = {_mtext(A.int_matrix)}")
        lines.append(f"seeds: {', '.join(_ptext(s) for s in res.seeds)}")
        for f in res.families:
            lines.append(
                f"family A^n * {_ptext(f.start)}  (seed {_ptext(f.seed)}, epsilon {f.epsilon:+d}):"
            )
            lines.append("  " + ", ".join(_ptext(p) for p in f.members(args.terms, args.positive)))
        if not res.complete:
            lines.append(f"warning: seed search capped at y <= {sol.search_limit}; more families may exist")
    return {"classification": cls.label, "result": data}, lines, code


def _solve_conic(c: GeneralConic, args) -> tuple[dict, list[str], int]:
    s = conic_mod.solve_conic(c, max_scan=_cap(args.bound, pell.MAX_SCAN))
    red = s.reduction
    fwd, inv = red.map.describe()
    lines = [
        f"canonical form: {red.equation}",
        f"substitution: {fwd}",
        f"inverse: {inv}",
        f"classification: {_cls_text(s.classification)}",
    ]
    data: dict = {
        "kind": s.kind,
        "canonical": str(red.equation),
        "substitution": fwd,
        "inverse": inv,
    }
    code = EXIT_OK
    if s.kind == "empty":
        if s.pell_solution is not None and isinstance(s.pell_solution.result, pell.Empty):
            data["certificate"] = _cert_json(s.pell_solution.result)
        else:
            data["certificate"] = {"type": "exhaustive", "proven": s.proven, "reason": s.reason}
        if s.proven:
            lines.append(f"no solutions ({_empty_reason(s)})")
        else:
            lines.append(f"no solutions found: {s.reason}")
            code = EXIT_UNPROVEN
    elif s.kind == "finite":
        data["points"] = [_point(p) for p in s.points]
        lines.append(f"{len(s.points)} solutions:")
        lines += [f"  {_ptext(p)}" for p in s.points]
    elif s.kind == "parametric-lines":
        data["lines"] = [{"base": _point(b), "step": _point(d)} for b, d in s.lines]
        lines.append("infinitely many solutions on lines (base + k*step, k in Z):")
        lines += [f"  {_ptext(b)} + k*{_ptext(d)}" for b, d in s.lines]
    else:
        A = s.automorphism
        data["automorphism"] = _matrix(A.int_matrix)
        data["families"] = [
            {
                "seed": _point(f.seed),
                "epsilon": f.epsilon,
                "matrix": _matrix(f.recurrence.rows),
                "canonical_seed": _point(f.canonical_seed),
                "canonical_matrix": _matrix(f.canonical_matrix),
                "members": [
                    _point(_abs(p) if args.positive else p) for p in f.members(red.map, args.terms)
                ],
            }
            for f in s.families
        ]
        if not s.proven:
            data["unproven"] = True
            code = EXIT_UNPROVEN
        lines.append(f"canonical automorphism: {_mtext(A.int_matrix)}")
        for rec in s.recurrences:
            lines.append(f"affine recurrence (x, y, 1) -> M (x, y, 1), M = {_mtext(rec.matrix.rows)}")
        for f in s.families:
            lines.append(
                f"family seeded {_ptext(f.seed)} (canonical {_ptext(f.canonical_seed)}"
                + (f", every {f.step}th canonical step" if f.step > 1 else "")
                + "):"
            )
            members = f.members(red.map, args.terms)
            lines.append("  " + ", ".join(_ptext(_abs(p) if args.positive else p) for p in members))
    cls_label = s.classification.label if s.classification else "unclassified"
    return {"classification": cls_label, "result": data}, lines, code


def _cap(value: int | None, default: int) -> int:
    return default if value is None else value


def _abs(p):
    return tuple(abs(v) for v in p)


def _empty_reason(s: conic_mod.ConicSolution) -> str:
    if isinstance(s.classification, FiniteSameSign):
        can = s.reduction.equation
        if can.c > 0:
            return "sign argument"
        return "no lattice point on the bounded conic"
    return s.reason or "certificate"


def _solve_same_sign(eq: SameSignEquation) -> tuple[dict, list[str], int]:
    pts = solve_same_sign(eq)
    a, b, c = (eq.a, eq.b, eq.c) if eq.a > 0 else (-eq.a, -eq.b, -eq.c)
    if not pts:
        reason = "sign argument" if c > 0 else "no lattice point on the ellipse"
        return (
            {"classification": FiniteSameSign.label,
             "result": {"kind": "empty", "certificate": {"type": "sign" if c > 0 else "exhaustive"}}},
            [f"classification: {FiniteSameSign.label}", f"no solutions ({reason})"],
            EXIT_OK,
        )
    return (
        {"classification": FiniteSameSign.label,
         "result": {"kind": "finite", "points": [_point(p) for p in pts]}},
        [f"classification: {FiniteSameSign.label}", f"{len(pts)} solutions:"]
        + [f"  {_ptext(p)}" for p in pts],
        EXIT_OK,
    )


def _solve_nform(form: nform.DiagonalForm, args) -> tuple[dict, list[str], int]:
    s = nform.nform_solve(form, K=args.k, box=_cap(args.bound, nform.DEFAULT_BOX))
    cls = "finite-definite" if not form.mixed_signs else "indefinite"
    data: dict = {"kind": s.kind}
    lines = [f"classification: {cls}"]
    code = EXIT_OK
    if s.kind in ("finite", "empty") and s.proven:
        data["points"] = [_point(p) for p in s.points]
        if s.points:
            lines.append(f"{len(s.points)} solutions:")
            lines += [f"  {_ptext(p)}" for p in s.points]
        else:
            lines.append("no solutions (sign argument)" if form.b * form.coeffs[0] < 0 else "no solutions")
            data["certificate"] = {"type": "definite"}
    elif s.kind in ("empty", "no-automorph"):
        data["certificate"] = {"type": "bound", "proven": False, "reason": s.reason}
        lines.append(f"inconclusive: {s.reason}")
        code = EXIT_UNPROVEN
    else:
        m = nform.simplest(s.automorphs)
        data["families"] = [
            {"seed": _point(seed), "epsilon": 1, "matrix": _matrix(m.matrix)} for seed in s.seeds
        ]
        data["seeds"] = [_point(x) for x in s.seeds]
        data["automorphs"] = [_matrix(m.matrix) for m in s.automorphs]
        data["coverage"] = {"covered": str(s.coverage[0]), "total": str(s.coverage[1])}
        lines.append(
            f"{len(s.automorphs)} nontrivial automorphs within K={args.k} "
            f"({s.total_automorphs} including signed permutations)"
        )
        lines.append(f"seeds (box {_cap(args.bound, nform.DEFAULT_BOX)}): {', '.join(_ptext(x) for x in s.seeds)}")
        for seed in s.seeds:
            seq = [nform.nform_generate(seed, m, n) for n in range(args.terms)]
            lines.append(f"  orbit of {_ptext(seed)} under {_mtext(m.matrix)}: " + ", ".join(_ptext(p) for p in seq))
        pct = s.coverage_percent
        lines.append(
            f"box coverage by descent: {s.coverage[0]}/{s.coverage[1]}"
            + (f" ({pct:.1f}%)" if pct is not None else "")
        )
    return {"classification": cls, "result": data}, lines, code


def cmd_solve(args, out: TextIO) -> int:
    parsed, eq = _load(args.equation)
    if isinstance(eq, GeneralConic):
        if (pe := pell_form(eq)) is not None:
            data, lines, code = _solve_pell(pe, args)
        elif (se := same_sign_form(eq)) is not None:
            data, lines, code = _solve_same_sign(se)
        else:
            data, lines, code = _solve_conic(eq, args)
    else:
        data, lines, code = _solve_nform(eq, args)
    _emit(args, out, parsed, eq, data, lines)
    return code


def _emit(args, out, parsed, eq, data, lines) -> None:
    if getattr(args, "format", "text") == "json":
        doc = {"equation": _equation_json(parsed, eq), **data}
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        out.write(f"equation: {parsed.render()}\n")
        for line in lines:
            out.write(line + "\n")


def _cls_text(cls) -> str:
    if cls is None:
        return "unclassified"
    extra = {k: v for k, v in vars(cls).items()}
    if not extra:
        return cls.label
    return cls.label + " (" + ", ".join(f"{k} = {v}" for k, v in extra.items()) + ")"


def _cert_json(res: pell.Empty) -> dict:
    cert = res.certificate
    if cert is None:
        return {"type": "bound", "proven": res.proven, "reason": res.reason}
    out = {"type": cert.label, "proven": res.proven, "reason": res.reason}
    out.update({k: str(v) for k, v in vars(cert).items()})
    return out


# ---------------------------------------------------------------------------
# other subcommands


def cmd_classify(args, out: TextIO) -> int:
    parsed, eq = _load(args.equation)
    out.write(f"equation: {parsed.render()}\n")
    if not isinstance(eq, GeneralConic):
        kind = "indefinite (mixed signs): automorph route" if eq.mixed_signs else "definite: finitely many solutions"
        out.write(f"classification: {kind}\n")
        return EXIT_OK
    red = conic_mod.reduce(eq)
    can = red.equation
    if not red.map.is_identity:
        out.write(f"canonical form: {can}\n")
    if can.same_sign:
        out.write(f"classification: {FiniteSameSign.label}\n")
        return EXIT_OK
    pe = can.as_pell()
    cls = classify(pe)
    out.write(f"classification: {_cls_text(cls)}\n")
    if cls.label == "infinite-family-candidate" and pe.c != 0:
        m = congruence_certificate(pe, default_moduli(pe))
        if m is not None:
            out.write(f"congruence certificate: no roots modulo {m}\n")
    return EXIT_OK


def _closed_form_lines(fam: pell.SolutionFamily, names=("x", "y")) -> list[str]:
    cf = pell.closed_form(fam)
    lam, lamc = render_surd(cf.lam), render_surd(cf.lam.conjugate())

    def term(coef, base):
        if coef.q0 == 0 and coef.q1 == 0:
            return None
        text = render_surd(coef)
        if text == "1":
            return f"({base})^n"
        if " " in text and not text.startswith("("):
            text = f"({text})"
        return f"{text}·({base})^n"

    out = []
    for name, cp, cm in ((names[0], cf.coeff_x_plus, cf.coeff_x_minus), (names[1], cf.coeff_y_plus, cf.coeff_y_minus)):
        parts = [t for t in (term(cp, lam), term(cm, lamc)) if t]
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        out.append(f"  {name}_n = {body}")
    return out


def cmd_closed_form(args, out: TextIO) -> int:
    parsed, eq = _load(args.equation)
    if not isinstance(eq, GeneralConic):
        raise UsageError("closed-form supports bivariate equations only")
    out.write(f"equation: {parsed.render()}\n")
    pe = pell_form(eq)
    amap = None
    if pe is None:
        red = conic_mod.reduce(eq)
        if red.equation.same_sign:
            out.write("finitely many solutions; no closed form needed\n")
            return EXIT_OK
        pe, amap = red.equation.as_pell(), red.map
        out.write(f"canonical form: {red.equation}\n")
    sol = pell.solve(pe)
    if not isinstance(sol.result, pell.Families):
        out.write(f"no infinite family ({sol.result.kind})\n")
        return EXIT_OK if getattr(sol.result, "proven", True) else EXIT_UNPROVEN
    names = ("x", "y") if amap is None else ("u", "v")
    for fam in sol.result.families:
        out.write(f"family seed {_ptext(fam.seed)}, epsilon {fam.epsilon:+d}, n in Z:\n")
        for line in _closed_form_lines(fam, names):
            out.write(line + "\n")
    if amap is not None:
        out.write(f"original variables: {amap.describe()[1]}\n")
    return EXIT_OK


def cmd_reduce(args, out: TextIO) -> int:
    parsed, eq = _load(args.equation)
    if not isinstance(eq, GeneralConic):
        raise UsageError("reduce supports bivariate equations only")
    red = conic_mod.reduce(eq)
    fwd, inv = red.map.describe()
    out.write(f"equation: {parsed.render()}\n")
    out.write(f"canonical form: {red.equation}\n")
    out.write(f"substitution: {fwd}\n")
    out.write(f"inverse: {inv}\n")
    if red.degenerate:
        out.write("degenerate: the canonical constant vanishes (line pair or single point)\n")
    can = red.equation
    if not can.same_sign and can.c != 0 and classify(can.as_pell()).label == "infinite-family-candidate":
        A = pell.resolvent(can.a, -can.b)
        rec = conic_mod.affine_automorphism(red.map, A)
        out.write(f"canonical automorphism: {_mtext(A.int_matrix)}\n")
        out.write(f"affine recurrence: {_mtext(rec.matrix.rows)}\n")
    return EXIT_OK


def cmd_automorph(args, out: TextIO) -> int:
    try:
        coeffs = tuple(int(v) for v in args.form.split(","))
    except ValueError:
        raise UsageError(f"--form expects comma-separated integers, got {args.form!r}")
    form = nform.DiagonalForm(coeffs, 0)
    autos = nform.automorph_search(form, args.bound)
    trivial = [m for m in autos if m.is_signed_permutation()]
    shown = autos if args.include_trivial else [m for m in autos if not m.is_signed_permutation()]
    if args.format == "json":
        json.dump(
            {"form": [str(c) for c in coeffs], "bound": str(args.bound), "total": str(len(autos)),
             "signed_permutations": str(len(trivial)), "automorphs": [_matrix(m.matrix) for m in shown]},
            out, indent=2,
        )
        out.write("\n")
        return EXIT_OK
    out.write(
        f"form diag({', '.join(map(str, coeffs))}), entries in [-{args.bound}, {args.bound}]: "
        f"{len(autos)} automorphs ({len(trivial)} signed permutations)\n"
    )
    for m in shown:
        out.write(_mtext(m.matrix) + "\n")
    return EXIT_OK


def cmd_oracle(args, out: TextIO) -> int:
    parsed, eq = _load(args.equation)
    pts = oracle.enumerate_solutions(eq, args.bound)
    if args.format == "json":
        json.dump({"equation": _equation_json(parsed, eq), "bound": str(args.bound),
                   "points": [_point(p) for p in pts]}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"equation: {parsed.render()}\n")
        out.write(f"{len(pts)} solutions with all |coordinates| <= {args.bound}\n")
        for p in pts:
            out.write(f"  {_ptext(p)}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dioph", description="Exact solver for second-degree Diophantine equations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an equation")
    s.add_argument("equation")
    s.add_argument("--terms", type=int, default=5, help="members listed per family (default 5)")
    s.add_argument("--bound", type=int, default=None,
                   help="seed search cap (bivariate) or search box (3+ variables)")
    s.add_argument("--k", type=int, default=nform.DEFAULT_K, help="automorph entry bound for 3+ variables")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--positive", action="store_true", help="report (|x_n|, |y_n|)")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("classify", help="report the solution regime")
    c.add_argument("equation")
    c.set_defaults(func=cmd_classify)

    cf = sub.add_parser("closed-form", help="closed expressions over quadratic surds")
    cf.add_argument("equation")
    cf.set_defaults(func=cmd_closed_form)

    r = sub.add_parser("reduce", help="reduce a conic to canonical form")
    r.add_argument("equation")
    r.set_defaults(func=cmd_reduce)

    a = sub.add_parser("automorph", help="search integer automorphs of a diagonal form")
    a.add_argument("--form", required=True, help="comma-separated coefficients a1,...,an")
    a.add_argument("--bound", type=int, default=nform.DEFAULT_K, help="entry bound K (default 5)")
    a.add_argument("--include-trivial", action="store_true", help="also list signed permutations")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_automorph)

    o = sub.add_parser("oracle", help="brute-force enumeration in a box")
    o.add_argument("equation")
    o.add_argument("--bound", type=int, required=True)
    o.add_argument("--format", choices=("text", "json"), default="text")
    o.set_defaults(func=cmd_oracle)
    return p


def run(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if getattr(args, "terms", 1) < 0 or (getattr(args, "bound", None) or 0) < 0:
        err.write("dioph: error: --terms and --bound must be nonnegative\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except ParseError as e:
        err.write(f"dioph: parse error [{e.kind}]: {e}\n")
    except (UsageError, ValueError) as e:
        err.write(f"dioph: error: {e}\n")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
