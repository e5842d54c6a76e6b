"""Vertex A-algebroids as 1-truncated conformal algebras A + B.

Conventions for the products on C = A + B (a in A, u, v in B):
    u_0 v = [u,v],   u_1 v = <u,v>,   u_0 a = pi(u)(a),   a_0 u = -u_0 a,
and every other product (a_i a', u_1 a, a_1 u) is zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from .leibniz import LeibnizAlgebra, StructuralError, check_levi_setup, leib_ideal
from .qlinalg import Rat, Subspace, SparseVec, axpy, scale

ONE = Rat(1)


@dataclass
class CommAlgebra:
    names: List[str]
    mult: Dict[Tuple[int, int], SparseVec] = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.names)

    def mul(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.mult.get((i, j), {}))
        return out


@dataclass
class VertexAlgebroid:
    A: CommAlgebra
    B_names: List[str]
    partial: Dict[int, SparseVec] = field(default_factory=dict)
    bracket: Dict[Tuple[int, int], SparseVec] = field(default_factory=dict)
    pairing: Dict[Tuple[int, int], SparseVec] = field(default_factory=dict)
    anchor: Dict[Tuple[int, int], SparseVec] = field(default_factory=dict)
    action: Dict[Tuple[int, int], SparseVec] = field(default_factory=dict)
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def dimA(self):
        return self.A.dim

    @property
    def dimB(self):
        return len(self.B_names)

    # bilinear extensions; arguments are sparse vectors over basis indices
    def _bil(self, table, x, y):
        out: SparseVec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, table.get((i, j), {}))
        return out

    def mul(self, a, a2):
        return self.A.mul(a, a2)

    def br(self, u, v):
        return self._bil(self.bracket, u, v)

    def pair(self, u, v):
        return self._bil(self.pairing, u, v)

    def anc(self, u, a):
        return self._bil(self.anchor, u, a)

    def act(self, a, v):
        return self._bil(self.action, a, v)

    def d(self, a):
        out: SparseVec = {}
        for i, c in a.items():
            axpy(out, c, self.partial.get(i, {}))
        return out

    def index_of(self, name: str) -> Tuple[str, int]:
        if name in self.B_names:
            return "B", self.B_names.index(name)
        if name in self.A.names:
            return "A", self.A.names.index(name)
        raise KeyError(name)

    def leibniz(self) -> LeibnizAlgebra:
        n = self.dimB
        return LeibnizAlgebra(list(self.B_names),
                              {(i, j): dict(self.bracket.get((i, j), {})) for i in range(n) for j in range(n)})

    def validate(self) -> None:
        nA, nB = self.dimA, self.dimB
        if nA < 1:
            raise StructuralError("A must contain the identity")
        for name, table, dom, cod in (("mult", self.A.mult, (nA, nA), nA),
                                      ("bracket", self.bracket, (nB, nB), nB),
                                      ("pairing", self.pairing, (nB, nB), nA),
                                      ("anchor", self.anchor, (nB, nA), nA),
                                      ("action", self.action, (nA, nB), nB)):
            for (i, j), v in table.items():
                if not (0 <= i < dom[0] and 0 <= j < dom[1]):
                    raise StructuralError(f"{name}: index ({i},{j}) out of range")
                if any(not (0 <= k < cod) for k in v):
                    raise StructuralError(f"{name}: output index out of range at ({i},{j})")
        for i, v in self.partial.items():
            if not 0 <= i < nA or any(not (0 <= k < nB) for k in v):
                raise StructuralError(f"partial: bad entry at {i}")


def _e(i):
    return {i: ONE}


# ---------------------------------------------------------------- checks

def check_comm_assoc(A: CommAlgebra) -> List[tuple]:
    n = A.dim
    bad = []
    for i, j in product(range(n), repeat=2):
        if axpy(dict(A.mul(_e(i), _e(j))), -1, A.mul(_e(j), _e(i))):
            bad.append(("comm", i, j))
    for i in range(n):
        if axpy(dict(A.mul(_e(0), _e(i))), -1, _e(i)) or axpy(dict(A.mul(_e(i), _e(0))), -1, _e(i)):
            bad.append(("unit", i))
    for i, j, k in product(range(n), repeat=3):
        lhs = A.mul(A.mul(_e(i), _e(j)), _e(k))
        rhs = A.mul(_e(i), A.mul(_e(j), _e(k)))
        if axpy(lhs, -1, rhs):
            bad.append(("assoc", i, j, k))
    return bad


class _C:
    """The 1-truncated conformal algebra C = A + B with keys ('A',i), ('B',j)."""

    def __init__(self, V: VertexAlgebroid):
        self.V = V
        self.basis = [("A", i) for i in range(V.dimA)] + [("B", j) for j in range(V.dimB)]

    @staticmethod
    def split(x):
        a = {k[1]: c for k, c in x.items() if k[0] == "A"}
        b = {k[1]: c for k, c in x.items() if k[0] == "B"}
        return a, b

    @staticmethod
    def tag(t, v):
        return {(t, k): c for k, c in v.items()}

    def prod(self, i, x, y):
        V = self.V
        xa, xb = self.split(x)
        ya, yb = self.split(y)
        out: SparseVec = {}
        if i == 0:
            axpy(out, 1, self.tag("B", V.br(xb, yb)))
            axpy(out, 1, self.tag("A", V.anc(xb, ya)))
            axpy(out, -1, self.tag("A", V.anc(yb, xa)))
        elif i == 1:
            axpy(out, 1, self.tag("A", V.pair(xb, yb)))
        return out

    def d(self, x):
        xa, _ = self.split(x)
        return self.tag("B", self.V.d(xa))


def check_1tca(V: VertexAlgebroid) -> List[tuple]:
    V.validate()
    C = _C(V)
    bad = []
    keys = C.basis
    for a in range(V.dimA):
        ea = {("A", a): ONE}
        da = C.d(ea)
        for x in keys:
            ex = {x: ONE}
            if C.prod(0, da, ex):
                bad.append(("(da)_0=0", a, x))
            if axpy(C.prod(1, da, ex), 1, C.prod(0, ea, ex)):
                bad.append(("(da)_1=-a_0", a, x))
        for u in range(V.dimB):
            eu = {("B", u): ONE}
            if axpy(C.d(C.prod(0, eu, ea)), -1, C.prod(0, eu, da)):
                bad.append(("d(u_0a)=u_0da", u, a))
            if axpy(C.prod(0, eu, ea), 1, C.prod(0, ea, eu)):
                bad.append(("u_0a=-a_0u", u, a))
    for u, v in product(range(V.dimB), repeat=2):
        eu, ev = {("B", u): ONE}, {("B", v): ONE}
        rhs = axpy(scale(-1, C.prod(0, ev, eu)), 1, C.d(C.prod(1, eu, ev)))
        if axpy(C.prod(0, eu, ev), -1, rhs):
            bad.append(("u_0v=-v_0u+d(u_1v)", u, v))
        if axpy(C.prod(1, eu, ev), -1, C.prod(1, ev, eu)):
            bad.append(("u_1v=v_1u", u, v))
    for al, be, ga in product(keys, repeat=3):
        x, y, z = {al: ONE}, {be: ONE}, {ga: ONE}
        for i in (0, 1):
            lhs = C.prod(0, x, C.prod(i, y, z))
            rhs = C.prod(i, y, C.prod(0, x, z))
            axpy(rhs, 1, C.prod(i, C.prod(0, x, y), z))
            if axpy(lhs, -1, rhs):
                bad.append(("assoc", i, al, be, ga))
    return bad


def check_vertex_algebroid(V: VertexAlgebroid) -> List[tuple]:
    """Every defining identity of a vertex A-algebroid and the compatibilities
    with the conformal-algebra products, on basis tuples."""
    V.validate()
    nA, nB = V.dimA, V.dimB
    As = [_e(i) for i in range(nA)]
    Bs = [_e(j) for j in range(nB)]
    bad = []

    def chk(name, lhs, rhs, *idx):
        if axpy(dict(lhs), -1, rhs):
            bad.append((name,) + idx)

    for v in range(nB):
        chk("unit.v=v", V.act(As[0], Bs[v]), Bs[v], v)
    for a in range(nA):
        for x in range(nA):
            if V.anc(V.d(As[a]), As[x]):
                bad.append(("pi(d)=0", a, x))
    # left Leibniz identity for the bracket and pi a Leibniz morphism
    for u, v, w in product(range(nB), repeat=3):
        lhs = V.br(Bs[u], V.br(Bs[v], Bs[w]))
        rhs = axpy(V.br(V.br(Bs[u], Bs[v]), Bs[w]), 1, V.br(Bs[v], V.br(Bs[u], Bs[w])))
        chk("leibniz", lhs, rhs, u, v, w)
    for u, v, a in product(range(nB), range(nB), range(nA)):
        lhs = V.anc(V.br(Bs[u], Bs[v]), As[a])
        rhs = axpy(V.anc(Bs[u], V.anc(Bs[v], As[a])), -1, V.anc(Bs[v], V.anc(Bs[u], As[a])))
        chk("pi hom", lhs, rhs, u, v, a)
    for u, v in product(range(nB), repeat=2):
        chk("pairing symmetric", V.pair(Bs[u], Bs[v]), V.pair(Bs[v], Bs[u]), u, v)

    for a, a2, v in product(range(nA), range(nA), range(nB)):
        A1, A2, Vv = As[a], As[a2], Bs[v]
        lhs = axpy(V.act(A1, V.act(A2, Vv)), -1, V.act(V.mul(A1, A2), Vv))
        rhs = axpy(V.act(V.anc(Vv, A1), V.d(A2)), 1, V.act(V.anc(Vv, A2), V.d(A1)))
        chk("a.(a'.v)-(aa').v", lhs, rhs, a, a2, v)
        # a_0(a'.v) = a' * (a_0 v), with a_0 v = -pi(v)(a)
        lhs = scale(-1, V.anc(V.act(A2, Vv), A1))
        rhs = V.mul(A2, scale(-1, V.anc(Vv, A1)))
        chk("a_0(a'.v)=a'*(a_0v)", lhs, rhs, a, a2, v)
    for u, a, v in product(range(nB), range(nA), range(nB)):
        U, Aa, Vv = Bs[u], As[a], Bs[v]
        lhs = V.br(U, V.act(Aa, Vv))
        rhs = axpy(V.act(V.anc(U, Aa), Vv), 1, V.act(Aa, V.br(U, Vv)))
        chk("[u,a.v]", lhs, rhs, u, a, v)
        lhs = V.pair(V.act(Aa, U), Vv)
        rhs = axpy(V.mul(Aa, V.pair(U, Vv)), -1, V.anc(U, V.anc(Vv, Aa)))
        chk("<a.u,v>", lhs, rhs, a, u, v)
    for u, v in product(range(nB), repeat=2):
        chk("[u,v]+[v,u]=d<u,v>", axpy(V.br(Bs[u], Bs[v]), 1, V.br(Bs[v], Bs[u])),
            V.d(V.pair(Bs[u], Bs[v])), u, v)
    for a, v, a2 in product(range(nA), range(nB), range(nA)):
        chk("pi(a.v)=a pi(v)", V.anc(V.act(As[a], Bs[v]), As[a2]),
            V.mul(As[a], V.anc(Bs[v], As[a2])), a, v, a2)
    for v, v1, v2 in product(range(nB), repeat=3):
        lhs = V.anc(Bs[v], V.pair(Bs[v1], Bs[v2]))
        rhs = axpy(V.pair(V.br(Bs[v], Bs[v1]), Bs[v2]), 1, V.pair(Bs[v1], V.br(Bs[v], Bs[v2])))
        chk("pi(v)<v1,v2>", lhs, rhs, v, v1, v2)
    for a, a2 in product(range(nA), repeat=2):
        lhs = V.d(V.mul(As[a], As[a2]))
        rhs = axpy(V.act(As[a], V.d(As[a2])), 1, V.act(As[a2], V.d(As[a])))
        chk("d(aa')", lhs, rhs, a, a2)
    for v, a in product(range(nB), range(nA)):
        chk("[v,da]=d(pi(v)a)", V.br(Bs[v], V.d(As[a])), V.d(V.anc(Bs[v], As[a])), v, a)
        chk("<v,da>=pi(v)a", V.pair(Bs[v], V.d(As[a])), V.anc(Bs[v], As[a]), v, a)
    # anchor acts by derivations of A
    for u, a, a2 in product(range(nB), range(nA), range(nA)):
        lhs = V.anc(Bs[u], V.mul(As[a], As[a2]))
        rhs = axpy(V.mul(As[a], V.anc(Bs[u], As[a2])), 1, V.mul(V.anc(Bs[u], As[a]), As[a2]))
        chk("u_0(aa')", lhs, rhs, u, a, a2)
    return bad



# ---------------------------------------------------------------- builders

@dataclass
class FamilyInstance:
    l: int
    alg: VertexAlgebroid
    e: int
    f: int
    h: int
    a: Dict[Tuple[int, int], int]
    dd: Dict[Tuple[int, int], int]


def build_family(l: int) -> FamilyInstance:
    """Vertex algebroid with A = C1 + sum_j N^j and B = sl2 + dA, dim B = 2l+3."""
    if not isinstance(l, int) or l < 1:
        raise ValueError("l must be a positive integer")
    a_names = ["id"] + [f"a{j}_{i}" for j in range(1, l + 1) for i in (0, 1)]
    b_names = ["e", "f", "h"] + [f"d{j}_{i}" for j in range(1, l + 1) for i in (0, 1)]
    ai = {(j, i): a_names.index(f"a{j}_{i}") for j in range(1, l + 1) for i in (0, 1)}
    di = {(j, i): b_names.index(f"d{j}_{i}") for j in range(1, l + 1) for i in (0, 1)}
    E, F, H = 0, 1, 2
    nA, nB = len(a_names), len(b_names)

    mult = {}
    for x in range(nA):
        for y in range(nA):
            if x == 0:
                mult[(x, y)] = _e(y)
            elif y == 0:
                mult[(x, y)] = _e(x)
            else:
                mult[(x, y)] = {}
    A = CommAlgebra(a_names, mult)
    partial = {0: {}}
    for key, k in ai.items():
        partial[k] = _e(di[key])

    anchor = {(b, x): {} for b in range(nB) for x in range(nA)}
    for j in range(1, l + 1):
        a0, a1 = ai[(j, 0)], ai[(j, 1)]
        anchor[(E, a1)] = _e(a0)
        anchor[(F, a0)] = _e(a1)
        anchor[(H, a0)] = _e(a0)
        anchor[(H, a1)] = {a1: -ONE}

    sl2 = {(E, F): {H: ONE}, (F, E): {H: -ONE}, (H, E): {E: Rat(2)}, (E, H): {E: -Rat(2)},
           (H, F): {F: -Rat(2)}, (F, H): {F: Rat(2)}}
    bracket = {(x, y): {} for x in range(nB) for y in range(nB)}
    bracket.update(sl2)
    for b in (E, F, H):
        for key, k in ai.items():
            out: SparseVec = {}
            for x, c in anchor[(b, k)].items():
                axpy(out, c, partial[x])
            bracket[(b, di[key])] = out

    pairing = {(x, y): {} for x in range(nB) for y in range(nB)}
    pairing[(E, F)] = pairing[(F, E)] = _e(0)
    pairing[(H, H)] = {0: Rat(2)}
    for j in range(1, l + 1):
        a0, a1 = ai[(j, 0)], ai[(j, 1)]
        d0, d1 = di[(j, 0)], di[(j, 1)]
        for x, y, val in ((d1, E, _e(a0)), (d0, F, _e(a1)), (d0, H, _e(a0)), (d1, H, {a1: -ONE})):
            pairing[(x, y)] = pairing[(y, x)] = val

    action = {(x, b): {} for x in range(nA) for b in range(nB)}
    for b in range(nB):
        action[(0, b)] = _e(b)
    for j in range(1, l + 1):
        a0, a1 = ai[(j, 0)], ai[(j, 1)]
        d0, d1 = di[(j, 0)], di[(j, 1)]
        action[(a1, E)] = _e(d0)
        action[(a0, F)] = _e(d1)
        action[(a0, H)] = _e(d0)
        action[(a1, H)] = {d1: -ONE}

    V = VertexAlgebroid(A, b_names, partial, bracket, pairing, anchor, action,
                        metadata={"name": f"family-l{l}", "l": l, "e": "e", "f": "f", "h": "h"})
    return FamilyInstance(l, V, E, F, H, ai, di)


def degenerate_sl2() -> VertexAlgebroid:
    """A = C1, B = sl2, d = 0, <e,f> = 1, <h,h> = 2: the level-one affine case."""
    A = CommAlgebra(["id"], {(0, 0): _e(0)})
    E, F, H = 0, 1, 2
    bracket = {(x, y): {} for x in range(3) for y in range(3)}
    bracket.update({(E, F): {H: ONE}, (F, E): {H: -ONE}, (H, E): {E: Rat(2)},
                    (E, H): {E: -Rat(2)}, (H, F): {F: -Rat(2)}, (F, H): {F: Rat(2)}})
    pairing = {(x, y): {} for x in range(3) for y in range(3)}
    pairing[(E, F)] = pairing[(F, E)] = _e(0)
    pairing[(H, H)] = {0: Rat(2)}
    return VertexAlgebroid(A, ["e", "f", "h"], {0: {}}, bracket, pairing,
                           {(b, 0): {} for b in range(3)}, {(0, b): _e(b) for b in range(3)},
                           metadata={"name": "affine-sl2", "e": "e", "f": "f", "h": "h"})


# ---------------------------------------------------------------- hypotheses

def _designated(V: VertexAlgebroid, key: str) -> int:
    return V.B_names.index(V.metadata.get(key, key))


def ker_partial(V: VertexAlgebroid) -> Subspace:
    from .qlinalg import kernel_combos
    return Subspace(kernel_combos([V.d(_e(i)) for i in range(V.dimA)]))


def anchor_invariants(V: VertexAlgebroid) -> Subspace:
    from .qlinalg import kernel_combos
    cols = []
    for i in range(V.dimA):
        v: SparseVec = {}
        for b in range(V.dimB):
            for k, c in V.anc(_e(b), _e(i)).items():
                v[(b, k)] = c
        cols.append(v)
    return Subspace(kernel_combos(cols))


def check_family_hypotheses(V: VertexAlgebroid) -> dict:
    """Hypotheses of the classification theorem; returns violations, k and the case."""
    bad: List[str] = []
    trivial = all(not V.anc(_e(b), _e(i)) for b in range(V.dimB) for i in range(V.dimA))
    if trivial:
        bad.append("A is a trivial B-module")
    if V.dimA < 2:
        bad.append("dim A < 2")
    L = V.leibniz()
    leib = leib_ideal(L)
    if leib.dim == 0:
        bad.append("Leib(B) = 0")
    k: Optional[Rat] = None
    try:
        e, f, h = (_designated(V, x) for x in ("e", "f", "h"))
    except ValueError:
        bad.append("no designated e,f,h")
        return {"violations": bad, "k": None, "case": None}
    levi = check_levi_setup(L, e, f, h)
    bad.extend("levi: " + s for s in levi)
    ef = V.pair(_e(e), _e(f))
    if set(ef) == {0}:
        k = ef[0]
    else:
        bad.append("e_1f is not a nonzero multiple of the identity")
    kd = ker_partial(V)
    inv = anchor_invariants(V)
    ker_ok = kd.dim == inv.dim and all(x in inv for x in kd.basis())
    # Leib(B) is simple over sl2 iff e has a one-dimensional kernel on it
    simple = False
    if leib.dim:
        from .qlinalg import kernel_combos
        lb = leib.basis()
        hw = kernel_combos([L.br(_e(e), x) for x in lb])
        simple = len(hw) == 1
    case = None
    if not bad:
        case = "I" if simple else ("II" if ker_ok else None)
    if case is None and not bad:
        bad.append("neither simple nor semisimple-with-kernel condition")
    return {"violations": bad, "k": k, "case": case, "ker_partial_dim": kd.dim,
            "ker_condition": ker_ok}
