"""Lift searched cross tilings of Z_L to multiplicative tilings of R and check them.

For each L, every non-trivial cross tiling found by the search becomes a
one-cell instance; optionally a second cell carrying a translated copy is
added so the resulting sets are not unions of whole 1/L-cells.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from crosstile.realline import construct_from_cross, reduce_to_cycles, sum_diff_check, to_multiplicative, verify_mult_tiling
from crosstile.search import SearchConstraints, search_cross


@dataclass
class Config:
    lengths: tuple[int, ...] = (4, 6, 8)
    per_length: int = 3
    split_cells: bool = True
    show: int = 1


def run(cfg: Config) -> None:
    for L in cfg.lengths:
        found = list(search_cross(L, SearchConstraints(nontrivial=True)))
        print(f"L={L}: {len(found)} non-trivial cross tilings")
        for i, inst in enumerate(found[:cfg.per_length]):
            if cfg.split_cells:
                cells = [(Fraction(0), Fraction(1, 2 * L)), (Fraction(1, 2 * L), Fraction(1, L))]
                data = [(inst.A, inst.B), (inst.A.translate(1), inst.B.translate(1))]
            else:
                cells, data = [(Fraction(0), Fraction(1, L))], [(inst.A, inst.B)]
            m = construct_from_cross(L, cells, data, inst.X, inst.Y)
            ok = all(r.is_tiling for r in verify_mult_tiling(m))
            back = reduce_to_cycles(m)
            print(f"  #{i}: sets {inst.key()} tiling={ok} sum/diff={sum_diff_check(m)} "
                  f"cells after reduction={len(back.cells)}")
            if i < cfg.show:
                print("    " + to_multiplicative(m, 4).replace("\n", "\n    "))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lengths", type=int, nargs="+", default=list(Config.lengths))
    ap.add_argument("--per-length", type=int, default=Config.per_length)
    ap.add_argument("--whole-cells", action="store_true", help="one cell per coset instead of two")
    a = ap.parse_args()
    run(Config(tuple(a.lengths), a.per_length, not a.whole_cells))
