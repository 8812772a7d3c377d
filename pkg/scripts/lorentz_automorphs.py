"""Automorph search for a diagonal form, with seeds and box coverage."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from dioph.nform import DiagonalForm, automorph_search, nform_solve, simplest


@dataclass
class AutomorphConfig:
    coeffs: tuple[int, ...] = (1, 1, -1)
    b: int = -1
    K: int = 3
    box: int = 20


def main(cfg: AutomorphConfig) -> None:
    form = DiagonalForm(cfg.coeffs, cfg.b)
    t0 = time.perf_counter()
    autos = automorph_search(form, cfg.K)
    dt = time.perf_counter() - t0
    nontrivial = [m for m in autos if not m.is_signed_permutation()]
    print(f"form {form}: {len(autos)} automorphs with entries in [-{cfg.K}, {cfg.K}] ({dt:.2f}s)")
    print(f"  {len(nontrivial)} are not signed permutations")
    if nontrivial:
        print(f"  simplest: {simplest(nontrivial).matrix}")
    sol = nform_solve(form, K=cfg.K, box=cfg.box)
    print(f"  result {sol.kind}, seeds {list(sol.seeds)}")
    if sol.coverage is not None:
        hit, total = sol.coverage
        print(f"  coverage in box {cfg.box}: {hit}/{total} ({sol.coverage_percent:.1f}%)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--coeffs", default="1,1,-1")
    ap.add_argument("--b", type=int, default=AutomorphConfig.b)
    ap.add_argument("--K", type=int, default=AutomorphConfig.K)
    ap.add_argument("--box", type=int, default=AutomorphConfig.box)
    a = ap.parse_args()
    main(AutomorphConfig(tuple(int(t) for t in a.coeffs.split(",")), a.b, a.K, a.box))
