"""Reduce a general conic, print the affine recurrence and check both generation routes."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from dioph.conic import GeneralConic, solve_conic


@dataclass
class ConicConfig:
    coefficients: tuple[int, ...] = (9, 6, -13, -6, -16, 20)
    terms: int = 6
    check_steps: int = 20


def main(cfg: ConicConfig) -> None:
    conic = GeneralConic(*cfg.coefficients)
    sol = solve_conic(conic)
    red = sol.reduction
    fwd, inv = red.map.describe()
    print(f"conic:      {conic}")
    print(f"canonical:  {red.equation}")
    print(f"forward:    {fwd}")
    print(f"inverse:    {inv}")
    print(f"result:     {sol.kind}")
    if sol.automorphism is not None:
        print(f"canonical automorphism: {sol.automorphism.int_matrix}")
    for rec in sol.recurrences:
        print(f"affine recurrence (seeds {list(rec.seeds)}):\n{rec.matrix}")
    amap = red.map
    for fam in sol.families:
        a = fam.members(amap, cfg.check_steps + 1)
        b = [fam.member(n) for n in range(cfg.check_steps + 1)]
        agree = "agree" if a == b else "DISAGREE"
        print(f"seed {fam.seed}: {a[: cfg.terms]} ... routes {agree} for n <= {cfg.check_steps}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("coefficients", nargs="*", type=int, help="A B C D E F")
    ap.add_argument("--terms", type=int, default=ConicConfig.terms)
    args = ap.parse_args()
    cfg = ConicConfig(terms=args.terms)
    if args.coefficients:
        if len(args.coefficients) != 6:
            ap.error("give all six coefficients A B C D E F")
        cfg.coefficients = tuple(args.coefficients)
    main(cfg)
