"""Text presentation of a vertex algebroid (JSON with fixed layout).

Coefficient tables are lists of entries ``[i, j, k, "p/q"]`` meaning
table[(i, j)] has coefficient p/q on basis element k; ``partial`` uses
``[i, k, "p/q"]``.  Only nonzero entries are written.
"""
from __future__ import annotations

import json
from typing import Dict, List

from .algebroid import CommAlgebra, VertexAlgebroid
from .leibniz import StructuralError
from .qlinalg import fmt_rat, parse_rat

TABLES = ("bracket", "pairing", "anchor", "action")


class PresentationError(ValueError):
    """Malformed presentation text; the message carries the location."""


def _entries2(table: Dict) -> List[list]:
    out = []
    for (i, j) in sorted(table):
        for k in sorted(table[(i, j)]):
            c = table[(i, j)][k]
            if c:
                out.append([i, j, k, fmt_rat(c)])
    return out


def to_dict(V: VertexAlgebroid) -> dict:
    partial = []
    for i in sorted(V.partial):
        for k in sorted(V.partial[i]):
            if V.partial[i][k]:
                partial.append([i, k, fmt_rat(V.partial[i][k])])
    meta = {k: V.metadata[k] for k in sorted(V.metadata)}
    return {
        "metadata": meta,
        "A": {"names": list(V.A.names), "mult": _entries2(V.A.mult)},
        "B": {"names": list(V.B_names)},
        "partial": partial,
        **{t: _entries2(getattr(V, t)) for t in TABLES},
    }


def dumps(V: VertexAlgebroid) -> str:
    d = to_dict(V)
    lines = ["{"]
    keys = list(d)
    for n, key in enumerate(keys):
        comma = "," if n < len(keys) - 1 else ""
        val = d[key]
        if isinstance(val, list):
            if not val:
                lines.append(f'  "{key}": []{comma}')
                continue
            lines.append(f'  "{key}": [')
            for m, row in enumerate(val):
                lines.append("    " + json.dumps(row) + ("," if m < len(val) - 1 else ""))
            lines.append(f"  ]{comma}")
        else:
            lines.append(f'  "{key}": ' + json.dumps(val, sort_keys=False) + comma)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fail(where: str, msg: str):
    raise PresentationError(f"{where}: {msg}")


def _table(d: dict, key: str, n_in, n_out) -> Dict:
    rows = d.get(key)
    if not isinstance(rows, list):
        _fail(key, "missing or not a list")
    out: Dict = {(i, j): {} for i in range(n_in[0]) for j in range(n_in[1])}
    for r, row in enumerate(rows):
        where = f"{key}[{r}]"
        if not (isinstance(row, list) and len(row) == 4):
            _fail(where, "expected [i, j, k, coefficient]")
        i, j, k, c = row
        if not all(isinstance(x, int) for x in (i, j, k)):
            _fail(where, "indices must be integers")
        if not (0 <= i < n_in[0] and 0 <= j < n_in[1] and 0 <= k < n_out):
            _fail(where, "index out of range")
        try:
            q = parse_rat(c)
        except (ValueError, ZeroDivisionError):
            _fail(where, f"bad coefficient {c!r}")
        if q:
            out[(i, j)][k] = out[(i, j)].get(k, 0) + q
    return out


def from_dict(d: dict) -> VertexAlgebroid:
    for key in ("A", "B", "partial") + TABLES:
        if key not in d:
            _fail(key, "section missing")
    a_names = d["A"].get("names") if isinstance(d["A"], dict) else None
    b_names = d["B"].get("names") if isinstance(d["B"], dict) else None
    if not (isinstance(a_names, list) and a_names):
        _fail("A.names", "need a nonempty list with the identity first")
    if not isinstance(b_names, list):
        _fail("B.names", "need a list")
    nA, nB = len(a_names), len(b_names)
    mult = _table(d["A"], "mult", (nA, nA), nA)
    partial: Dict[int, dict] = {i: {} for i in range(nA)}
    if not isinstance(d["partial"], list):
        _fail("partial", "not a list")
    for r, row in enumerate(d["partial"]):
        where = f"partial[{r}]"
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(x, int) for x in row[:2])):
            _fail(where, "expected [i, k, coefficient]")
        i, k, c = row
        if not (0 <= i < nA and 0 <= k < nB):
            _fail(where, "index out of range")
        try:
            q = parse_rat(c)
        except (ValueError, ZeroDivisionError):
            _fail(where, f"bad coefficient {c!r}")
        if q:
            partial[i][k] = partial[i].get(k, 0) + q
    bracket = _table(d, "bracket", (nB, nB), nB)
    pairing = _table(d, "pairing", (nB, nB), nA)
    anchor = _table(d, "anchor", (nB, nA), nA)
    action = _table(d, "action", (nA, nB), nB)
    meta = d.get("metadata", {})
    if not isinstance(meta, dict):
        _fail("metadata", "not an object")
    V = VertexAlgebroid(CommAlgebra(list(a_names), mult), list(b_names), partial, bracket, pairing,
                        anchor, action, metadata=dict(meta))
    try:
        V.validate()
    except StructuralError as exc:
        raise PresentationError(str(exc)) from exc
    return V


def loads(text: str) -> VertexAlgebroid:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(d, dict):
        raise PresentationError("top level: expected an object")
    return from_dict(d)
