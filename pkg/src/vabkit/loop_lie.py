"""The graded Lie algebra of modes, L(A + B) modulo the image of d + d/dt.

Canonical generators are a(-1) for a in A and b(n) for b in B, n in Z, where
at n = 0 only a fixed complement of dA in B survives.  Every other A-mode is
rewritten through a(m) = -(1/(m+1)) (da)(m+1).
"""
from __future__ import annotations

from itertools import product
from typing import Dict, List, Tuple

from .algebroid import VertexAlgebroid
from .qlinalg import Rat, Subspace, SparseVec, axpy, scale

Gen = Tuple[str, int, int]          # ('A', i, -1) or ('B', j, n)
LoopElt = Dict[Gen, Rat]


class LoopAlgebra:
    def __init__(self, V: VertexAlgebroid):
        self.V = V
        self.dA = Subspace(V.d({i: Rat(1)}) for i in range(V.dimA))
        # B-indices that survive at mode 0
        self.zero_modes = [j for j in range(V.dimB) if j not in self.dA.rows]
        self._cache: Dict[Tuple[Gen, Gen], LoopElt] = {}

    # -- canonical forms
    def b_mode(self, b: SparseVec, n: int) -> LoopElt:
        if n == 0:
            b = self.dA.reduce(b)
        return {("B", j, n): c for j, c in b.items()}

    def a_mode(self, a: SparseVec, m: int) -> LoopElt:
        if m == -1:
            return {("A", i, -1): c for i, c in a.items()}
        return self.b_mode(scale(Rat(-1, m + 1), self.V.d(a)), m + 1)

    def reduce(self, a: SparseVec, m: int) -> LoopElt:
        return self.a_mode(a, m)

    def gen(self, kind: str, idx: int, n: int) -> LoopElt:
        e = {idx: Rat(1)}
        return self.a_mode(e, n) if kind == "A" else self.b_mode(e, n)

    @staticmethod
    def degree(g: Gen) -> int:
        return 0 if g[0] == "A" else -g[2]

    def generators(self, M: int) -> List[Gen]:
        out: List[Gen] = [("A", i, -1) for i in range(self.V.dimA)]
        for n in range(-M, M + 1):
            js = self.zero_modes if n == 0 else range(self.V.dimB)
            out.extend(("B", j, n) for j in js)
        return out

    # -- brackets
    def bracket_gen(self, x: Gen, y: Gen) -> LoopElt:
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        V = self.V
        ex, ey = {x[1]: Rat(1)}, {y[1]: Rat(1)}
        if x[0] == "A" and y[0] == "A":
            out: LoopElt = {}
        elif x[0] == "A":
            out = self.a_mode(scale(-1, V.anc(ey, ex)), y[2] - 1)
        elif y[0] == "A":
            out = self.a_mode(V.anc(ex, ey), x[2] - 1)
        else:
            m, n = x[2], y[2]
            out = self.b_mode(V.br(ex, ey), m + n)
            if m:
                axpy(out, m, self.a_mode(V.pair(ex, ey), m + n - 1))
        self._cache[key] = out
        return out

    def bracket(self, X: LoopElt, Y: LoopElt) -> LoopElt:
        out: LoopElt = {}
        for x, a in X.items():
            for y, b in Y.items():
                axpy(out, a * b, self.bracket_gen(x, y))
        return out


def check_jacobi(L: LoopAlgebra, M: int) -> List[tuple]:
    """Antisymmetry and Jacobi on all canonical generators with modes in [-M, M]."""
    gens = L.generators(M)
    bad = []
    for x, y in product(gens, repeat=2):
        s = dict(L.bracket_gen(x, y))
        if axpy(s, 1, L.bracket_gen(y, x)):
            bad.append(("antisym", x, y))
    for x in gens:
        X = {x: Rat(1)}
        for y in gens:
            Y = {y: Rat(1)}
            XY = L.bracket(X, Y)
            for z in gens:
                Z = {z: Rat(1)}
                lhs = L.bracket(X, L.bracket(Y, Z))
                axpy(lhs, -1, L.bracket(XY, Z))
                axpy(lhs, -1, L.bracket(Y, L.bracket(X, Z)))
                if lhs:
                    bad.append(("jacobi", x, y, z))
    return bad
