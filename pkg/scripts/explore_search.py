"""Count cross tilings of Z_N per cardinality profile and how many are non-trivial."""
from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from crosstile.cross import TrivialityKind, classify
from crosstile.search import search_cross


@dataclass
class Config:
    n_min: int = 2
    n_max: int = 12
    jobs: int = 1


def run(cfg: Config) -> None:
    print(f"{'N':>3} {'total':>7} {'nontriv':>8} {'secs':>6}  profiles (a,b,x,y): count/nontrivial")
    for n in range(cfg.n_min, cfg.n_max + 1):
        t = time.perf_counter()
        total, nontriv = Counter(), Counter()
        for inst in search_cross(n, jobs=cfg.jobs):
            card = inst.cardinalities()
            total[card] += 1
            nontriv[card] += classify(inst).kind is TrivialityKind.NON_TRIVIAL
        secs = time.perf_counter() - t
        prof = ", ".join(f"{p}:{total[p]}/{nontriv[p]}" for p in sorted(total))
        print(f"{n:>3} {sum(total.values()):>7} {sum(nontriv.values()):>8} {secs:>6.1f}  {prof}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=Config.n_min)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    a = ap.parse_args()
    run(Config(a.n_min, a.n_max, a.jobs))
