"""Rebuild the two worked cross tilings, print their verdicts and write SVG pictures."""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from pathlib import Path

from crosstile.cross import (
    classify,
    embed_product,
    fourier_cross_check,
    gen_example_first,
    gen_example_second,
    translate_equivalent,
    verify_cross,
    verify_cross_equiv,
)
from crosstile.render import grids_for, layout, svg_grids


@dataclass
class Config:
    out_dir: Path = Path("out/examples")
    first_family: tuple[tuple[int, int], ...] = ((5, 3), (3, 5), (7, 3), (5, 5))


def summarize(name, inst) -> str:
    r = verify_cross(inst)
    e = verify_cross_equiv(inst)
    verdicts = {
        "direct": all(x.is_tiling for x in r),
        "equiv": all(x.is_tiling for x in e),
        "fourier": fourier_cross_check(inst),
        "embed": embed_product(inst).report.is_tiling,
    }
    shifts = translate_equivalent(inst.X, inst.Y)
    return (f"{name:<14} N={inst.modulus:<4} sizes={inst.cardinalities()} "
            f"{' '.join(f'{k}={v}' for k, v in verdicts.items())} "
            f"kind={classify(inst).kind.name} X~Y={'yes' if shifts is not None else 'no'}")


def run(cfg: Config) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    cases = [(f"first({a},{b})", gen_example_first(a, b)) for a, b in cfg.first_family]
    cases.append(("second", gen_example_second()))
    for name, inst in cases:
        print(summarize(name, inst))
        lay = layout(inst.modulus, inst.factorization)
        svg = svg_grids(grids_for("cross", inst), lay, name)
        path = cfg.out_dir / f"{name.replace('(', '_').replace(')', '').replace(',', '_')}.svg"
        path.write_text(svg)
    print(f"pictures in {cfg.out_dir}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Config.out_dir)
    run(Config(out_dir=ap.parse_args().out_dir))
