"""Finite-dimensional left Leibniz algebras over Q.

The bracket satisfies [a,[b,c]] = [[a,b],c] + [b,[a,c]].  Everything is
checked on basis triples, which suffices by trilinearity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .qlinalg import Rat, Subspace, SparseVec, axpy, intersect


class StructuralError(ValueError):
    """Malformed structure-constant table."""


@dataclass
class LeibnizAlgebra:
    names: List[str]
    bracket: Dict[Tuple[int, int], SparseVec] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.names)

    def validate(self) -> None:
        n = self.dim
        for i in range(n):
            for j in range(n):
                if (i, j) not in self.bracket:
                    raise StructuralError(f"missing bracket entry [{self.names[i]},{self.names[j]}]")
                for k in self.bracket[(i, j)]:
                    if not (isinstance(k, int) and 0 <= k < n):
                        raise StructuralError(f"bad basis index {k!r} in [{i},{j}]")

    def br(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.bracket.get((i, j), {}))
        return out

    def unit(self, i: int) -> SparseVec:
        return {i: Rat(1)}


def check_leibniz(L: LeibnizAlgebra) -> List[Tuple[int, int, int]]:
    """All basis triples (a,b,c) violating the left Leibniz identity."""
    L.validate()
    n = L.dim
    bad = []
    for a in range(n):
        ea = L.unit(a)
        for b in range(n):
            eb = L.unit(b)
            ab = L.bracket[(a, b)]
            for c in range(n):
                ec = L.unit(c)
                lhs = L.br(ea, L.bracket[(b, c)])
                rhs = L.br(ab, ec)
                axpy(rhs, 1, L.br(eb, L.bracket[(a, c)]))
                if axpy(lhs, -1, rhs):
                    bad.append((a, b, c))
    return bad


def leib_ideal(L: LeibnizAlgebra) -> Subspace:
    """span{[u,v]+[v,u]}; spanned by the symmetrized basis brackets."""
    L.validate()
    s = Subspace()
    for i in range(L.dim):
        for j in range(i, L.dim):
            v = dict(L.bracket[(i, j)])
            axpy(v, 1, L.bracket[(j, i)])
            s.add(v)
    return s


def bracket_space(L: LeibnizAlgebra, S: Subspace, T: Subspace) -> Subspace:
    out = Subspace()
    for x in S.basis():
        for y in T.basis():
            out.add(L.br(x, y))
    return out


def full_space(L: LeibnizAlgebra) -> Subspace:
    return Subspace(L.unit(i) for i in range(L.dim))


def is_subalgebra(L: LeibnizAlgebra, S: Subspace) -> bool:
    return all(L.br(x, y) in S for x in S.basis() for y in S.basis())


def derived_series(L: LeibnizAlgebra, S: Subspace = None) -> List[Subspace]:
    """S, [S,S], [[S,S],[S,S]], ... until the dimension stops dropping."""
    if S is None:
        S = full_space(L)
    if not is_subalgebra(L, S):
        raise ValueError("input subspace is not closed under the bracket")
    series = [S]
    while True:
        nxt = bracket_space(L, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_solvable(L: LeibnizAlgebra, S: Subspace = None) -> bool:
    return derived_series(L, S)[-1].dim == 0


def check_ideal(L: LeibnizAlgebra, S: Subspace) -> Tuple[bool, bool]:
    basis = [L.unit(i) for i in range(L.dim)]
    left = all(L.br(x, s) in S for x in basis for s in S.basis())
    right = all(L.br(s, x) in S for x in basis for s in S.basis())
    return left, right


# operators on a module W are lists of images of the basis of W
Operator = List[SparseVec]


def op_apply(op: Operator, w: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for k, c in w.items():
        axpy(out, c, op[k])
    return out


def op_combo(ops: Sequence[Operator], coeffs: SparseVec, dim: int) -> Operator:
    out = [dict() for _ in range(dim)]
    for i, c in coeffs.items():
        for col in range(dim):
            axpy(out[col], c, ops[i][col])
    return out


def check_module(L: LeibnizAlgebra, ops: Sequence[Operator], dim: int) -> List[tuple]:
    """Violations of [u,v].m = u.(v.m) - v.(u.m), plus Leib(L) acting nonzero."""
    L.validate()
    if len(ops) != L.dim or any(len(op) != dim for op in ops):
        raise StructuralError("operator count or size does not match")
    bad = []
    for u in range(L.dim):
        for v in range(L.dim):
            uv = op_combo(ops, L.bracket[(u, v)], dim)
            for m in range(dim):
                em = {m: Rat(1)}
                lhs = op_apply(uv, em)
                rhs = op_apply(ops[u], op_apply(ops[v], em))
                axpy(rhs, -1, op_apply(ops[v], op_apply(ops[u], em)))
                if axpy(lhs, -1, rhs):
                    bad.append(("axiom", u, v, m))
    for x in leib_ideal(L).basis():
        act = op_combo(ops, x, dim)
        if any(act):
            bad.append(("leib-acts", tuple(sorted(x.items()))))
    return bad


def adjoint_ops(L: LeibnizAlgebra) -> List[Operator]:
    return [[dict(L.bracket[(i, j)]) for j in range(L.dim)] for i in range(L.dim)]


def check_levi_setup(L: LeibnizAlgebra, e: int, f: int, h: int) -> List[str]:
    """Designated sl2 triple, closedness, and L = S + Leib(L) as a direct sum."""
    L.validate()
    out = []
    E, F, H = L.unit(e), L.unit(f), L.unit(h)

    def expect(name, got, want):
        if axpy(dict(got), -1, want):
            out.append(name)

    expect("[e,f]=h", L.br(E, F), H)
    expect("[h,e]=2e", L.br(H, E), {e: Rat(2)})
    expect("[h,f]=-2f", L.br(H, F), {f: Rat(-2)})
    S = Subspace([E, F, H])
    if S.dim != 3:
        out.append("e,f,h dependent")
    if not is_subalgebra(L, S):
        out.append("S not closed")
    leib = leib_ideal(L)
    if intersect(S, leib).dim != 0:
        out.append("S meets Leib")
    if S.dim + leib.dim != L.dim:
        out.append("S + Leib is not all of L")
    if not is_solvable(L, leib):
        out.append("Leib not solvable")
    return out
