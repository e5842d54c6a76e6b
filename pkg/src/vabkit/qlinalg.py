"""Exact rational sparse vectors and subspaces.

Vectors are plain dicts mapping an orderable key to a nonzero rational (``gmpy2.mpq``).
A :class:`Subspace` keeps an echelon basis in which every stored vector has
its largest key as pivot with coefficient 1, so membership is a single
descending elimination pass.
"""
from __future__ import annotations

import heapq
import gmpy2
from typing import Dict, Hashable, Iterable, List, Optional

Rat = gmpy2.mpq
SparseVec = Dict[Hashable, Rat]


def fmt_rat(q) -> str:
    q = Rat(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rat(s) -> Rat:
    if isinstance(s, int):
        return Rat(s)
    return Rat(str(s).strip())


def vec(items=()) -> SparseVec:
    out: SparseVec = {}
    for k, c in items:
        addto(out, k, c)
    return out


def addto(v: SparseVec, k, c) -> None:
    """In-place ``v[k] += c`` dropping zeros."""
    if not c:
        return
    c = v.get(k, 0) + c
    if c:
        v[k] = c
    else:
        v.pop(k, None)


def axpy(v: SparseVec, c, w: SparseVec) -> SparseVec:
    """In-place ``v += c*w``; returns v."""
    if c:
        get, pop = v.get, v.pop
        for k, x in w.items():
            y = get(k, 0) + c * x
            if y:
                v[k] = y
            else:
                pop(k, None)
    return v


def add(*vs: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for w in vs:
        axpy(out, 1, w)
    return out


def scale(c, v: SparseVec) -> SparseVec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def sub(v: SparseVec, w: SparseVec) -> SparseVec:
    return axpy(dict(v), -1, w)


class _Desc:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


class Subspace:
    """Span of sparse vectors, stored in pivot-is-max-key echelon form."""

    def __init__(self, vectors: Iterable[SparseVec] = ()):
        self.rows: Dict[Hashable, SparseVec] = {}
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return set(self.rows)

    def residue(self, v: SparseVec) -> SparseVec:
        """Reduce v until its leading key is not a pivot (partial reduction)."""
        v = {k: x for k, x in v.items() if x}
        rows = self.rows
        while v:
            k = max(v)
            r = rows.get(k)
            if r is None:
                return v
            c = v[k]
            get, pop = v.get, v.pop
            for kk, x in r.items():
                y = get(kk, 0) - c * x
                if y:
                    v[kk] = y
                else:
                    pop(kk, None)
        return v

    def reduce(self, v: SparseVec) -> SparseVec:
        """Full reduction: the result has no pivot keys at all.

        This is a linear map onto the span of the non-pivot keys, i.e. a
        canonical quotient representative.
        """
        v = {k: x for k, x in v.items() if x}
        rows = self.rows
        heap = [_Desc(k) for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap).k
            c = v.get(k)
            if not c:
                continue
            for kk, x in rows[k].items():
                if kk == k:
                    v.pop(k)
                    continue
                had = kk in v
                addto(v, kk, -c * x)
                if not had and kk in rows and kk in v:
                    heapq.heappush(heap, _Desc(kk))
        return v

    def add(self, v: SparseVec) -> Optional[SparseVec]:
        """Insert v; return the new normalized row, or None if v was dependent."""
        r = self.residue(v)
        if not r:
            return None
        k = max(r)
        c = Rat(r[k])
        r = {kk: Rat(x) / c for kk, x in r.items()}
        self.rows[k] = r
        return r

    def __contains__(self, v: SparseVec) -> bool:
        return not self.residue(v)

    def basis(self) -> List[SparseVec]:
        return [self.rows[k] for k in sorted(self.rows)]

    def copy(self) -> "Subspace":
        s = Subspace()
        s.rows = dict(self.rows)
        return s

    def canonical(self) -> List[SparseVec]:
        """Fully reduced row echelon basis, ordered by pivot."""
        done = Subspace()
        for k in sorted(self.rows):
            r = done.reduce({kk: x for kk, x in self.rows[k].items() if kk != k})
            r[k] = Rat(1)
            done.rows[k] = r
        return [done.rows[k] for k in sorted(done.rows)]


def rref(vectors: Iterable[SparseVec]) -> Subspace:
    return Subspace(vectors)


def member(s: Subspace, v: SparseVec) -> bool:
    return v in s


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    out = a.copy()
    for r in b.rows.values():
        out.add(r)
    return out


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b via the kernel of (x, y) -> x - y on the two bases."""
    ab = a.basis()
    bb = b.basis()
    tagged = [dict(r) for r in ab] + [{k: -x for k, x in r.items()} for r in bb]
    out = Subspace()
    for c in kernel_combos(tagged):
        w: SparseVec = {}
        for i, x in c.items():
            if i < len(ab):
                axpy(w, x, ab[i])
        if w:
            out.add(w)
    return out


def kernel_combos(vectors: List[SparseVec]) -> List[SparseVec]:
    """Basis of {c : sum_i c_i v_i = 0}, as dicts index -> coefficient."""
    s = Subspace()
    out = []
    for i, v in enumerate(vectors):
        w = {(1, k): x for k, x in v.items()}
        w[(0, i)] = Rat(1)
        r = s.residue(w)
        if r and max(r)[0] == 0:
            out.append({k[1]: x for k, x in r.items()})
        if r:
            s.add(r)
    return out


def solve_affine(rows: Iterable[SparseVec], nvars: int):
    """Solve sum_k r[k] x_k = -r['c'] for integer variable keys 0..nvars-1.

    Returns (particular, kernel) where particular is a dict solution (free
    variables set to 0) or None when inconsistent, and kernel is a basis of
    the homogeneous solution space.
    """
    s = Subspace()
    for r in rows:
        w = {(1, k): Rat(x) for k, x in r.items() if k != "c"}
        if "c" in r and r["c"]:
            w[(0, 0)] = Rat(r["c"])
        s.add(w)
    if (0, 0) in s.rows:
        return None, []
    red = s.canonical()
    piv = {max(r) for r in red}
    free = [k for k in range(nvars) if (1, k) not in piv]
    part: SparseVec = {}
    for r in red:
        k = max(r)[1]
        c = r.get((0, 0), 0)
        if c:
            part[k] = -c
    kernel = []
    for f in free:
        v: SparseVec = {f: Rat(1)}
        for r in red:
            x = r.get((1, f))
            if x:
                v[max(r)[1]] = -x
        kernel.append(v)
    return part, kernel
