"""Solve the worked Pell-type examples and print seeds, matrices and members."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from dioph import oracle
from dioph.classify import PellEquation
from dioph.exact import render_surd
from dioph.pell import Families, closed_form, solve


@dataclass
class ExamplesConfig:
    terms: int = 5
    oracle_bound: int = 2000
    equations: dict[str, tuple[int, int, int]] = field(
        default_factory=lambda: {
            "2x^2 - 3y^2 = 5": (2, 3, -5),
            "x^2 - 3y^2 = 4": (1, 3, -4),
            "x^2 - 12y^2 + 3 = 0": (1, 12, 3),
            "x^2 - 6y^2 - 10 = 0": (1, 6, -10),
            "x^2 - 12y^2 + 9 = 0": (1, 12, 9),
            "x^2 - 12y^2 - 9 = 0": (1, 12, -9),
            "14x^2 - 3y^2 - 18 = 0": (14, 3, -18),
        }
    )


def main(cfg: ExamplesConfig) -> None:
    for text, (a, b, c) in cfg.equations.items():
        eq = PellEquation(a, b, c)
        sol = solve(eq)
        res = sol.result
        print(f"== {text}")
        if not isinstance(res, Families):
            print(f"   {res.kind}: {getattr(res, 'reason', '')}")
            continue
        print(f"   A = {res.automorphism.int_matrix}, seeds {res.seeds}")
        for fam in res.families:
            cf = closed_form(fam)
            print(f"   eps={fam.epsilon:+d}: {fam.members(cfg.terms)}")
            print(f"      x coefficient {render_surd(cf.coeff_x_plus)}, y coefficient {render_surd(cf.coeff_y_plus)}")
        n = len(oracle.enumerate_solutions(eq, cfg.oracle_bound))
        print(f"   oracle: {n} solutions with |x|, |y| <= {cfg.oracle_bound}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--terms", type=int, default=ExamplesConfig.terms)
    ap.add_argument("--oracle-bound", type=int, default=ExamplesConfig.oracle_bound)
    args = ap.parse_args()
    main(ExamplesConfig(terms=args.terms, oracle_bound=args.oracle_bound))
