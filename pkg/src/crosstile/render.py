"""Grid pictures of subsets of Z_N: plain text and SVG.

With a coprime factorisation N = m * k the residue x sits in column x mod m
and row x mod k (the CRT picture); otherwise all of Z_N is a single row, or
``rows`` wraps it row-major.  Output is a pure function of the input, so SVG
bytes are stable across runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .zn_core import CyclicSet

SET_COLORS = {"A": "red", "B": "blue", "X": "green", "Y": "cyan", "Group": "black"}

CELL = 16
RADIUS = 5
MARGIN = 8
TITLE = 18


@dataclass(frozen=True)
class GridLayout:
    n: int
    columns: int
    rows: int
    crt: bool

    def position(self, x: int) -> tuple[int, int]:
        if self.crt:
            return x % self.columns, x % self.rows
        return x % self.columns, x // self.columns


def layout(n: int, factorization: tuple[int, int] | None = None, rows: int | None = None) -> GridLayout:
    if rows is not None:
        if rows < 1 or n % rows:
            raise ValueError(f"--rows {rows} must be a positive divisor of {n}")
        return GridLayout(n, n // rows, rows, False)
    if factorization is not None:
        m, k = factorization
        if m * k != n or math.gcd(m, k) != 1:
            raise ValueError(f"{m} x {k} is not a coprime factorisation of {n}")
        return GridLayout(n, m, k, True)
    return GridLayout(n, n, 1, False)


def grids_for(kind: str, payload) -> list[tuple[str, CyclicSet]]:
    if kind == "cross":
        n = payload.modulus
        return [("Group", CyclicSet.full(n))] + list(zip("ABXY", payload.sets))
    if kind == "tiling":
        return [("A", payload.A), ("X", payload.X)]
    raise ValueError(f"cannot draw a {kind} document as grids")


def ascii_grids(named: list[tuple[str, CyclicSet]], lay: GridLayout) -> str:
    blocks = []
    for name, s in named:
        cells = [["."] * lay.columns for _ in range(lay.rows)]
        for x in s:
            c, r = lay.position(x)
            cells[r][c] = "#"
        head = f"{name} ({lay.columns}x{lay.rows}, {len(s)} members)"
        blocks.append("\n".join([head] + ["".join(row) for row in cells]))
    return "\n\n".join(blocks) + "\n"


def svg_grids(named: list[tuple[str, CyclicSet]], lay: GridLayout, title: str = "") -> str:
    grid_w = lay.columns * CELL
    grid_h = lay.rows * CELL
    width = 2 * MARGIN + grid_w
    height = MARGIN + len(named) * (TITLE + grid_h + MARGIN) + (TITLE if title else 0)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>']
    y0 = MARGIN
    if title:
        out.append(f'<text x="{MARGIN}" y="{y0 + 12}" font-family="monospace" font-size="12">{_esc(title)}</text>')
        y0 += TITLE
    for name, s in named:
        color = SET_COLORS.get(name, "black")
        out.append(f'<g id="{_esc(name)}">')
        out.append(f'<text x="{MARGIN}" y="{y0 + 12}" font-family="monospace" font-size="12">'
                   f'{_esc(name)}</text>')
        top = y0 + TITLE
        members = set(s)
        for x in range(lay.n):
            c, r = lay.position(x)
            cx = MARGIN + c * CELL + CELL // 2
            cy = top + r * CELL + CELL // 2
            if x in members:
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="{color}"/>')
            else:
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{RADIUS}" fill="none" stroke="#bbbbbb"/>')
        out.append("</g>")
        y0 = top + grid_h + MARGIN
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
