"""``crosstile`` command line.

Exit codes: 0 verified, 1 not a tiling (or a rejected construction),
2 malformed input or bad usage, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Sequence

from . import documents as docs
from .cross import (
    CrossTilingInstance,
    cardinality_condition,
    classify,
    embed_product,
    fourier_cross_check,
    gen_example_first,
    gen_example_second,
    verify_cross,
    verify_cross_equiv,
)
from .realline import (
    CellRejected,
    construct_from_cycles,
    reduce_to_cycles,
    sum_diff_reports,
    to_multiplicative,
    verify_mult_tiling,
)
from .render import ascii_grids, grids_for, layout, svg_grids
from .search import SearchBudgetExceeded, SearchConstraints, search_cross
from .tiling import TilingReport, fourier_tiling_check, verify_tiling
from .torus_rational import class_levels, format_point

EXIT_OK, EXIT_NOT_TILING, EXIT_MALFORMED, EXIT_BUDGET = 0, 1, 2, 3

METHODS = ("direct", "equiv", "fourier", "embed")
SUPPORTED = {
    "tiling": {"direct", "fourier"},
    "cross": set(METHODS),
    "mult": {"direct", "equiv"},
    "cycles": {"direct"},
    "torus": {"direct"},
}


class UsageError(Exception):
    pass


def _fmt_violations(r: TilingReport, limit: int = 8) -> str:
    shown = ", ".join(f"{loc}->{val}" for loc, val in r.violations[:limit])
    more = "" if r.n_violations <= limit else f" (+{r.n_violations - limit} more)"
    return f"{r.n_violations} violation(s), expected level {r.expected}: {shown}{more}"


def _report_lines(label: str, r: TilingReport) -> list[str]:
    if r.is_tiling:
        return [f"{label}: ok (level {r.level})"]
    return [f"{label}: FAIL, {_fmt_violations(r)}"]


def _verify_tiling_doc(p, method: str, level: int | None) -> tuple[bool, list[str]]:
    level = p.level if level is None else level
    if method == "fourier":
        if level != 1:
            raise UsageError("the fourier method decides level-1 tilings only")
        ok = fourier_tiling_check(p.A, p.X)
        return ok, [f"A + X = Z_{p.modulus}: {'ok' if ok else 'FAIL'} (zero-set criterion)"]
    r = verify_tiling(p.A, p.X, level)
    return r.is_tiling, _report_lines(f"A + X = Z_{p.modulus} at level {level}", r)


def _verify_cross_doc(inst: CrossTilingInstance, method: str) -> tuple[bool, list[str]]:
    lines = []
    if method == "direct":
        r1, r2 = verify_cross(inst)
        lines += _report_lines("A*X + B*Y = 1", r1) + _report_lines("A*Y + B*X = 1", r2)
        ok = r1.is_tiling and r2.is_tiling
    elif method == "equiv":
        r1, r2 = verify_cross_equiv(inst)
        lines += _report_lines("(A+B)*(X+Y) = 2", r1) + _report_lines("(A-B)*(X-Y) = 0", r2)
        ok = r1.is_tiling and r2.is_tiling
    elif method == "fourier":
        ok = fourier_cross_check(inst)
        lines.append(f"zero-set criterion: {'ok' if ok else 'FAIL'}")
    else:
        emb = embed_product(inst)
        lines += _report_lines(f"C + Z = Z_{inst.modulus} x Z_2", emb.report)
        ok = emb.report.is_tiling
    a, b, x, y = inst.cardinalities()
    cond = cardinality_condition(inst)
    lines.append(f"cardinalities |A|={a} |B|={b} |X|={x} |Y|={y}; "
                 f"|A|=|B| or |X|=|Y|: {'yes' if cond else 'no'}")
    verdict = classify(inst)
    lines.append(f"classification: {verdict.kind.value} ({verdict.witness})")
    return ok, lines


def _verify_mult_doc(inst, method: str) -> tuple[bool, list[str]]:
    if method == "equiv":
        r1, r2 = sum_diff_reports(inst)
        lines = _report_lines("(w+ + w-)*(a+ + a-) = 2", r1) + _report_lines("(w+ - w-)*(a+ - a-) = 0", r2)
    else:
        r1, r2 = verify_mult_tiling(inst)
        lines = _report_lines("a+*w+ + a-*w- = 1", r1) + _report_lines("a-*w+ + a+*w- = 1", r2)
    return r1.is_tiling and r2.is_tiling, lines


def _verify_cycles_doc(data) -> tuple[bool, list[str]]:
    bad = data.failing_cells()
    lines = [f"{len(data.cells)} cell(s), L={data.L}"]
    for c in bad:
        lines.append(f"cell [{c.lo}, {c.hi}): not a cross tiling of Z_{data.L}")
    return not bad, lines


def _decompose_lines(problem) -> tuple[bool, list[str]]:
    levels = class_levels(problem.tile, problem.tau)
    lines = [f"{len(levels)} rational class(es)"]
    ok = True
    total = 0
    for j, cl in enumerate(levels, 1):
        pts = ", ".join(f"{format_point(p)} (w={w})" for p, w in cl.atoms.atoms)
        lines.append(f"class {j}: {pts}")
        if cl.shift.symbols:
            lines.append(f"  shifted by -({format_point(cl.shift)}) to rational atoms")
        if cl.report.is_tiling:
            lines.append(f"  level {cl.report.level}")
            total += cl.report.level
        else:
            ok = False
            lines.append(f"  non-constant: {_fmt_violations(cl.report)}")
    if ok:
        lines.append(f"total level {total}")
    return ok, lines


def cmd_verify(args) -> int:
    doc = docs.load(args.path)
    method = args.method
    if method not in SUPPORTED[doc.kind]:
        raise UsageError(f"method {method!r} does not apply to {doc.kind} documents "
                         f"(use one of {', '.join(sorted(SUPPORTED[doc.kind]))})")
    if args.level is not None and doc.kind != "tiling" and args.level != 1:
        raise UsageError(f"--level applies to tiling documents; {doc.kind} identities have fixed levels")
    if doc.kind == "tiling":
        ok, lines = _verify_tiling_doc(doc.payload, method, args.level)
    elif doc.kind == "cross":
        ok, lines = _verify_cross_doc(doc.payload, method)
    elif doc.kind == "mult":
        ok, lines = _verify_mult_doc(doc.payload, method)
    elif doc.kind == "cycles":
        ok, lines = _verify_cycles_doc(doc.payload)
    else:
        ok, lines = _decompose_lines(doc.payload)
    print(f"kind: {doc.kind}, method: {method}")
    for line in lines:
        print(line)
    print(f"verdict: {'VERIFIED' if ok else 'NOT A TILING'}")
    return EXIT_OK if ok else EXIT_NOT_TILING


def _parse_card(text: str) -> tuple[int, int, int, int]:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b,x,y integers, got {text!r}") from None
    if len(parts) != 4 or min(parts) < 0:
        raise argparse.ArgumentTypeError(f"expected four non-negative integers a,b,x,y, got {text!r}")
    return parts


def cmd_search(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.limit < 0:
        raise UsageError("--limit must be non-negative (0 = unlimited)")
    cons = SearchConstraints(cardinalities=args.card, nontrivial=args.nontrivial)
    emitted = 0
    out = sys.stdout
    for inst in search_cross(args.n, cons, jobs=args.jobs):
        out.write(docs.dumps(docs.cross_document(inst)) + "\n")
        emitted += 1
        if args.limit and emitted >= args.limit:
            break
    out.flush()
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.example == "first":
        if args.a is None or args.b is None:
            raise UsageError("--example first needs --a and --b")
        try:
            inst = gen_example_first(args.a, args.b)
        except ValueError as e:
            raise UsageError(str(e)) from None
        meta = {"title": f"first family, a={args.a}, b={args.b}", "provenance": "generate"}
    else:
        if args.a is not None or args.b is not None:
            raise UsageError("--a/--b only apply to --example first")
        inst = gen_example_second()
        meta = {"title": "Z_15 x Z_8 example", "provenance": "generate"}
    if inst.degenerate:
        meta["note"] = "listed elements collide modulo ab"
    print(docs.dumps(docs.cross_document(inst, meta)))
    return EXIT_OK


def cmd_render(args) -> int:
    doc = docs.load(args.path)
    if doc.kind == "mult":
        if args.format == "svg":
            raise UsageError("mult documents have no grid picture; use --format ascii for a text rendering")
        print(to_multiplicative(doc.payload, args.precision))
        return EXIT_OK
    if doc.kind not in ("cross", "tiling"):
        raise UsageError(f"cannot render {doc.kind} documents")
    n = doc.payload.modulus
    try:
        lay = layout(n, doc.factorization, args.rows)
    except ValueError as e:
        raise UsageError(str(e)) from None
    named = grids_for(doc.kind, doc.payload)
    if args.format == "ascii":
        sys.stdout.write(ascii_grids(named, lay))
    else:
        sys.stdout.write(svg_grids(named, lay, doc.metadata.get("title", "")))
    return EXIT_OK


def cmd_decompose(args) -> int:
    doc = docs.load(args.path)
    if doc.kind != "torus":
        raise UsageError(f"decompose expects a torus document, got {doc.kind}")
    try:
        ok, lines = _decompose_lines(doc.payload)
    except ValueError as e:
        raise docs.DocumentError(str(e)) from None
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_NOT_TILING


def cmd_reduce(args) -> int:
    doc = docs.load(args.path)
    if doc.kind != "mult":
        raise UsageError(f"reduce expects a mult document, got {doc.kind}")
    try:
        data = reduce_to_cycles(doc.payload)
    except ValueError as e:
        raise docs.DocumentError(str(e)) from None
    print(docs.dumps(docs.Document("cycles", data, doc.metadata)))
    bad = data.failing_cells()
    for c in bad:
        print(f"cell [{c.lo}, {c.hi}) is not a cross tiling of Z_{data.L}", file=sys.stderr)
    return EXIT_NOT_TILING if bad else EXIT_OK


def cmd_construct(args) -> int:
    doc = docs.load(args.path)
    if doc.kind != "cycles":
        raise UsageError(f"construct expects a cycles document, got {doc.kind}")
    try:
        inst = construct_from_cycles(doc.payload)
    except CellRejected as e:
        print(f"rejected: {e}", file=sys.stderr)
        return EXIT_NOT_TILING
    except ValueError as e:
        raise docs.DocumentError(str(e)) from None
    print(docs.dumps(docs.Document("mult", inst, doc.metadata)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crosstile", description="Cross tilings of Z_N and multiplicative tilings of R.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a tiling, cross, mult, cycles or torus document")
    v.add_argument("path")
    v.add_argument("--method", choices=METHODS, default="direct")
    v.add_argument("--level", type=int, default=None, help="tiling level (tiling documents)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="enumerate cross tilings of Z_N as JSON lines")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--card", type=_parse_card, default=None, metavar="a,b,x,y")
    s.add_argument("--nontrivial", action="store_true")
    s.add_argument("--limit", type=int, default=0, help="stop after k documents; 0 = unlimited")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_search)

    g = sub.add_parser("generate", help="emit one of the two worked examples")
    g.add_argument("--example", choices=("first", "second"), required=True)
    g.add_argument("--a", type=int)
    g.add_argument("--b", type=int)
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("render", help="draw a cross or tiling document")
    r.add_argument("path")
    r.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    r.add_argument("--rows", type=int, default=None, help="wrap Z_N row-major into this many rows")
    r.add_argument("--precision", type=int, default=6, help="digits for mult text rendering")
    r.set_defaults(func=cmd_render)

    d = sub.add_parser("decompose", help="rational classes and per-class levels of a torus document")
    d.add_argument("path")
    d.set_defaults(func=cmd_decompose)

    rd = sub.add_parser("reduce", help="mult document -> per-cell cycles document")
    rd.add_argument("path")
    rd.set_defaults(func=cmd_reduce)

    c = sub.add_parser("construct", help="cycles document -> mult document")
    c.add_argument("path")
    c.set_defaults(func=cmd_construct)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    func: Callable = args.func
    try:
        return func(args)
    except docs.DocumentError as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except SearchBudgetExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
