"""JSON instance documents (schema version 1).

Every document is an object with ``"v": 1`` and a ``"kind"``:

* ``tiling``  ``{"n", "sets": {"A", "X"}}`` plus an optional ``"level"``
* ``cross``   ``{"n", "sets": {"A", "B", "X", "Y"}}``
* ``mult``    ``{"L", "omega_plus", "omega_minus", "a_plus", "a_minus"}``
* ``cycles``  ``{"L", "alpha_plus", "alpha_minus", "cells": [{"lo", "hi", "b_plus", "b_minus"}]}``
* ``torus``   ``{"period", "tile": {"breakpoints", "values"}, "atoms": [{"at", "weight"}]}``

Exact rationals are ``"p/q"`` strings; torus atoms use the point grammar of
:func:`crosstile.torus_rational.parse_point`.  ``"factorization": [m, n]``
and a string-valued ``"metadata"`` map are optional everywhere.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cross import CrossTilingInstance
from .realline import CellData, CycleData, IntervalUnion, MultTilingInstance, PeriodicTranslateSet
from .torus_rational import CircleFunction, WeightedPeriodicPointSet, format_point, parse_point
from .zn_core import CyclicSet

VERSION = 1
KINDS = ("tiling", "cross", "mult", "cycles", "torus")


class DocumentError(ValueError):
    """Malformed document: bad JSON, wrong shape, or values violating invariants."""


@dataclass(frozen=True)
class TilingPair:
    A: CyclicSet
    X: CyclicSet
    level: int = 1

    @property
    def modulus(self) -> int:
        return self.A.modulus


@dataclass(frozen=True)
class TorusProblem:
    tile: CircleFunction
    tau: WeightedPeriodicPointSet


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any
    metadata: dict = field(default_factory=dict)
    factorization: tuple[int, int] | None = None


def _fail(where: str, msg: str):
    raise DocumentError(f"{where}: {msg}")


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        _fail(where, f"missing field {key!r}")
    return obj[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(where, f"expected an integer, got {x!r}")
    return x


_RAT = re.compile(r"[+-]?\d+(/\d+)?")


def _rat(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        _fail(where, f"expected a 'p/q' string or integer, got {x!r}")
    if isinstance(x, str) and not _RAT.fullmatch(x.strip()):
        _fail(where, f"not a 'p/q' rational: {x!r}")
    try:
        return Fraction(x)
    except ZeroDivisionError:
        _fail(where, f"zero denominator in {x!r}")


def _rat_str(q: Fraction) -> str:
    return str(q)


def _members(x, n: int, where: str) -> CyclicSet:
    if not isinstance(x, list):
        _fail(where, "expected a list of residues")
    vals = [_int(v, where) for v in x]
    bad = [v for v in vals if not 0 <= v < n]
    if bad:
        _fail(where, f"residues {bad} outside [0, {n})")
    if len(set(vals)) != len(vals):
        _fail(where, "repeated residue")
    return CyclicSet.from_members(n, vals)


def _rat_list(x, where: str) -> list[Fraction]:
    if not isinstance(x, list):
        _fail(where, "expected a list")
    return [_rat(v, where) for v in x]


def _intervals(x, where: str) -> IntervalUnion:
    if not isinstance(x, list):
        _fail(where, "expected a list of [lo, hi] pairs")
    pairs = []
    for iv in x:
        if not isinstance(iv, list) or len(iv) != 2:
            _fail(where, f"expected [lo, hi], got {iv!r}")
        pairs.append((_rat(iv[0], where), _rat(iv[1], where)))
    try:
        return IntervalUnion(tuple(pairs))
    except ValueError as e:
        _fail(where, str(e))


def _header(obj) -> tuple[str, dict, tuple[int, int] | None]:
    if not isinstance(obj, dict):
        _fail("document", "top level must be a JSON object")
    v = _need(obj, "v", "document")
    if v != VERSION:
        _fail("v", f"unsupported schema version {v!r}")
    kind = _need(obj, "kind", "document")
    if kind not in KINDS:
        _fail("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    meta = obj.get("metadata", {})
    if not isinstance(meta, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in meta.items()):
        _fail("metadata", "must map strings to strings")
    fac = obj.get("factorization")
    if fac is not None:
        if not isinstance(fac, list) or len(fac) != 2:
            _fail("factorization", "expected [m, n]")
        fac = (_int(fac[0], "factorization"), _int(fac[1], "factorization"))
    return kind, dict(meta), fac


def _check_factorization(fac, n: int):
    if fac is None:
        return
    m, k = fac
    if m < 1 or k < 1 or m * k != n or math.gcd(m, k) != 1:
        _fail("factorization", f"{list(fac)} is not a coprime factorisation of {n}")


def from_obj(obj) -> Document:
    kind, meta, fac = _header(obj)
    try:
        if kind in ("tiling", "cross"):
            n = _int(_need(obj, "n", kind), "n")
            if n < 1:
                _fail("n", "must be positive")
            _check_factorization(fac, n)
            sets = _need(obj, "sets", kind)
            if not isinstance(sets, dict):
                _fail("sets", "expected an object")
            names = ("A", "X") if kind == "tiling" else ("A", "B", "X", "Y")
            extra = set(sets) - set(names)
            if extra:
                _fail("sets", f"unexpected sets {sorted(extra)}")
            parsed = [_members(_need(sets, s, "sets"), n, f"sets.{s}") for s in names]
            if kind == "tiling":
                level = _int(obj.get("level", 1), "level")
                if level < 1:
                    _fail("level", "must be positive")
                payload = TilingPair(parsed[0], parsed[1], level)
            else:
                payload = CrossTilingInstance(n, *parsed, factorization=fac)
        elif kind == "mult":
            L = _int(_need(obj, "L", kind), "L")
            if L < 1:
                _fail("L", "must be positive")
            ap = _rat_list(_need(obj, "a_plus", kind), "a_plus")
            am = _rat_list(_need(obj, "a_minus", kind), "a_minus")
            payload = MultTilingInstance(
                L, _intervals(_need(obj, "omega_plus", kind), "omega_plus"),
                _intervals(_need(obj, "omega_minus", kind), "omega_minus"),
                PeriodicTranslateSet(tuple(ap), L), PeriodicTranslateSet(tuple(am), L))
        elif kind == "cycles":
            L = _int(_need(obj, "L", kind), "L")
            if L < 1:
                _fail("L", "must be positive")
            alpha_p = _members(_need(obj, "alpha_plus", kind), L, "alpha_plus")
            alpha_m = _members(_need(obj, "alpha_minus", kind), L, "alpha_minus")
            cells_raw = _need(obj, "cells", kind)
            if not isinstance(cells_raw, list):
                _fail("cells", "expected a list")
            cells = []
            for i, c in enumerate(cells_raw):
                w = f"cells[{i}]"
                if not isinstance(c, dict):
                    _fail(w, "expected an object")
                cells.append(CellData(_rat(_need(c, "lo", w), w), _rat(_need(c, "hi", w), w),
                                      _members(_need(c, "b_plus", w), L, w + ".b_plus"),
                                      _members(_need(c, "b_minus", w), L, w + ".b_minus")))
            payload = CycleData(L, alpha_p, alpha_m, tuple(cells))
        else:
            period = _rat(obj.get("period", "1"), "period")
            if period <= 0:
                _fail("period", "must be positive")
            tile = _need(obj, "tile", kind)
            if not isinstance(tile, dict):
                _fail("tile", "expected an object")
            bps = _rat_list(_need(tile, "breakpoints", "tile"), "tile.breakpoints")
            vals = [_int(v, "tile.values") for v in _need(tile, "values", "tile")]
            F = CircleFunction(tuple(bps), tuple(vals), period)
            atoms = []
            raw = _need(obj, "atoms", kind)
            if not isinstance(raw, list):
                _fail("atoms", "expected a list")
            for i, a in enumerate(raw):
                w = f"atoms[{i}]"
                if not isinstance(a, dict):
                    _fail(w, "expected an object")
                at = _need(a, "at", w)
                if not isinstance(at, str):
                    _fail(w, "'at' must be a point expression string")
                atoms.append((parse_point(at, period), _int(a.get("weight", 1), w)))
            payload = TorusProblem(F, WeightedPeriodicPointSet(period, tuple(atoms)))
    except DocumentError:
        raise
    except (ValueError, TypeError) as e:
        raise DocumentError(f"{kind}: {e}") from None
    return Document(kind, payload, meta, fac)


def parse(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_obj(obj)


def load(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    except UnicodeDecodeError as e:
        raise DocumentError(f"{path} is not UTF-8 (byte {e.start})") from None
    return parse(text)


def to_obj(doc: Document) -> dict:
    obj: dict[str, Any] = {"v": VERSION, "kind": doc.kind}
    p = doc.payload
    if doc.kind == "tiling":
        obj["n"] = p.modulus
        obj["sets"] = {"A": list(p.A.members), "X": list(p.X.members)}
        if p.level != 1:
            obj["level"] = p.level
    elif doc.kind == "cross":
        obj["n"] = p.modulus
        obj["sets"] = {name: list(s.members) for name, s in zip("ABXY", p.sets)}
    elif doc.kind == "mult":
        obj["L"] = p.L
        for name in ("omega_plus", "omega_minus"):
            obj[name] = [[_rat_str(lo), _rat_str(hi)] for lo, hi in getattr(p, name).intervals]
        for name in ("a_plus", "a_minus"):
            obj[name] = [_rat_str(o) for o in getattr(p, name).offsets]
    elif doc.kind == "cycles":
        obj["L"] = p.L
        obj["alpha_plus"] = list(p.alpha_plus.members)
        obj["alpha_minus"] = list(p.alpha_minus.members)
        obj["cells"] = [{"lo": _rat_str(c.lo), "hi": _rat_str(c.hi),
                         "b_plus": list(c.b_plus.members), "b_minus": list(c.b_minus.members)}
                        for c in p.cells]
    elif doc.kind == "torus":
        obj["period"] = _rat_str(p.tau.period)
        obj["tile"] = {"breakpoints": [_rat_str(b) for b in p.tile.breakpoints],
                       "values": list(p.tile.values)}
        obj["atoms"] = [{"at": format_point(pt), "weight": w} for pt, w in p.tau.atoms]
    else:
        raise DocumentError(f"unknown kind {doc.kind!r}")
    if doc.factorization is not None:
        obj["factorization"] = list(doc.factorization)
    if doc.metadata:
        obj["metadata"] = dict(sorted(doc.metadata.items()))
    return obj


def dumps(doc: Document, indent: int | None = None) -> str:
    """Normalised serialisation; ``parse(dumps(d))`` reproduces ``d``."""
    return json.dumps(to_obj(doc), indent=indent, ensure_ascii=False)


def cross_document(inst: CrossTilingInstance, metadata: dict | None = None) -> Document:
    return Document("cross", inst, dict(metadata or {}), inst.factorization)
