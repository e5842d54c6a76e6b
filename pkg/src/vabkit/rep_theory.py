"""sl2 irreducibles, Lie algebroid modules and the graded modules M_B(U), L(U)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .algebroid import VertexAlgebroid, build_family
from .leibniz import Operator, op_apply, op_combo
from .qlinalg import Rat, Subspace, SparseVec, axpy, kernel_combos, solve_affine
from .vertex_engine import (BaseModule, Engine, RelationBundle, Word, basic_relation_words,
                            square_word, state_degrees)


def _zero(dim: int) -> Operator:
    return [dict() for _ in range(dim)]


def _ident(dim: int) -> Operator:
    return [{k: Rat(1)} for k in range(dim)]


def _compose(x: Operator, y: Operator) -> Operator:
    return [op_apply(x, col) for col in y]


def _sub(x: Operator, y: Operator) -> Operator:
    return [axpy(dict(a), -1, b) for a, b in zip(x, y)]


def _is_zero(x: Operator) -> bool:
    return not any(x)


@dataclass
class Sl2Irrep:
    """V(m) with basis w_0..w_m, w_s of h-weight m - 2s."""
    m: int
    e: Operator = field(init=False)
    f: Operator = field(init=False)
    h: Operator = field(init=False)

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("highest weight must be >= 0")
        m, n = self.m, self.m + 1
        self.h = [{s: Rat(m - 2 * s)} if m - 2 * s else {} for s in range(n)]
        self.f = [{s + 1: Rat(s + 1)} if s < m else {} for s in range(n)]
        self.e = [{s - 1: Rat(m - s + 1)} if s > 0 else {} for s in range(n)]

    @property
    def dim(self):
        return self.m + 1

    def relations_hold(self) -> bool:
        ef = _sub(_compose(self.e, self.f), _compose(self.f, self.e))
        he = _sub(_compose(self.h, self.e), _compose(self.e, self.h))
        hf = _sub(_compose(self.h, self.f), _compose(self.f, self.h))
        two = lambda op, c: [{k: c * x for k, x in col.items()} for col in op]
        return (_is_zero(_sub(ef, self.h)) and _is_zero(_sub(he, two(self.e, 2)))
                and _is_zero(_sub(hf, two(self.f, -2))))


def sl2_irrep(m: int) -> Sl2Irrep:
    return Sl2Irrep(m)


@dataclass
class AlgebroidModuleData:
    """A-action and B-action on a finite-dimensional space W."""
    names: List[str]
    a_ops: List[Operator]
    b_ops: List[Operator]

    @property
    def dim(self):
        return len(self.names)

    def base(self) -> BaseModule:
        return BaseModule(list(self.names), self.a_ops, self.b_ops, vacuum=False)


def irrep_module(V: VertexAlgebroid, m: int, a_override: Optional[Dict[int, Operator]] = None) -> AlgebroidModuleData:
    """V(m) with e, f, h acting through the designated triple, every other B-basis
    element by zero, the identity of A by 1 and the rest of A by ``a_override`` (default 0)."""
    U = sl2_irrep(m)
    names = [f"w{s}" for s in range(U.dim)]
    tri = {V.B_names.index(V.metadata.get(k, k)): getattr(U, k) for k in ("e", "f", "h")}
    b_ops = [tri.get(b, _zero(U.dim)) for b in range(V.dimB)]
    a_ops = [_ident(U.dim)] + [_zero(U.dim) for _ in range(V.dimA - 1)]
    for i, op in (a_override or {}).items():
        a_ops[i] = op
    return AlgebroidModuleData(names, a_ops, b_ops)


def check_lie_algebroid_module(V: VertexAlgebroid, M: AlgebroidModuleData) -> List[tuple]:
    """Violations of the Lie A-algebroid module axioms on basis triples.

    u(aw) - a(uw) = (u.a)w and a(uw) = (a.u)w, associative unital A-action,
    the B-action is a Lie action and A.dA acts as zero.
    """
    n = M.dim
    bad = []
    A_op = lambda a: op_combo(M.a_ops, a, n)
    B_op = lambda b: op_combo(M.b_ops, b, n)
    e = lambda i: {i: Rat(1)}
    if not _is_zero(_sub(M.a_ops[0], _ident(n))):
        bad.append(("unit",))
    for i in range(V.dimA):
        for j in range(V.dimA):
            lhs = _compose(M.a_ops[i], M.a_ops[j])
            if not _is_zero(_sub(lhs, A_op(V.mul(e(i), e(j))))):
                bad.append(("assoc", i, j))
    for u in range(V.dimB):
        for a in range(V.dimA):
            comm = _sub(_compose(M.b_ops[u], M.a_ops[a]), _compose(M.a_ops[a], M.b_ops[u]))
            if not _is_zero(_sub(comm, A_op(V.anc(e(u), e(a))))):
                bad.append(("anchor", u, a))
            if not _is_zero(_sub(_compose(M.a_ops[a], M.b_ops[u]), B_op(V.act(e(a), e(u))))):
                bad.append(("a-linear", a, u))
        for v in range(V.dimB):
            comm = _sub(_compose(M.b_ops[u], M.b_ops[v]), _compose(M.b_ops[v], M.b_ops[u]))
            if not _is_zero(_sub(comm, B_op(V.br(e(u), e(v))))):
                bad.append(("lie", u, v))
    for a in range(V.dimA):
        for a2 in range(V.dimA):
            if not _is_zero(B_op(V.act(e(a), V.d(e(a2))))):
                bad.append(("AdA", a, a2))
    return bad


def solve_a_action(V: VertexAlgebroid, U: Sl2Irrep) -> dict:
    """All A-actions on V(m) compatible with the fixed B-action, by linear solving.

    Unknowns are the matrix entries of every non-identity basis element of A.
    The two module axioms are linear in them; associativity is quadratic and
    is checked on the solution afterwards.  Returns the particular solution,
    the kernel basis and whether the solution is the zero action.
    """
    M0 = irrep_module(V, U.m)
    n = U.dim
    idx = {}
    for i in range(1, V.dimA):
        for r in range(n):
            for c in range(n):
                idx[(i, r, c)] = len(idx)
    e = lambda i: {i: Rat(1)}

    def unknown_op(a: SparseVec):
        """Matrix of a as dict (r, c) -> linear form (dict var -> coef, 'c' -> const)."""
        out: Dict[tuple, dict] = {}
        for i, x in a.items():
            for r in range(n):
                for c in range(n):
                    form = out.setdefault((r, c), {})
                    if i == 0:
                        if r == c:
                            form["c"] = form.get("c", 0) + x
                    else:
                        axpy(form, x, {idx[(i, r, c)]: Rat(1)})
        return out

    def known(op: Operator):
        return {(r, c): op[c].get(r, 0) for r in range(n) for c in range(n)}

    rows: List[dict] = []

    def emit(forms: Dict[tuple, dict]):
        for form in forms.values():
            form = {k: v for k, v in form.items() if v}
            if form:
                rows.append(form)

    def lin_times(left: Optional[Operator], X: Dict[tuple, dict], right: Optional[Operator]):
        """left * X * right with X an unknown matrix; None means identity."""
        out: Dict[tuple, dict] = {}
        for (r, c), form in X.items():
            lcol = {r: Rat(1)} if left is None else left[r]
            rrow = [(c2, Rat(1)) for c2 in [c]] if right is None else [(c2, right[c2].get(c, 0)) for c2 in range(n)]
            for r2, x in lcol.items():
                for c2, y in rrow:
                    if x * y:
                        acc = out.setdefault((r2, c2), {})
                        for k, v in form.items():
                            acc[k] = acc.get(k, 0) + x * y * v
        return out

    for u in range(V.dimB):
        rho = M0.b_ops[u]
        for a in range(1, V.dimA):
            X = unknown_op(e(a))
            forms = lin_times(rho, X, None)
            for key, form in lin_times(None, X, rho).items():
                acc = forms.setdefault(key, {})
                for k, v in form.items():
                    acc[k] = acc.get(k, 0) - v
            for key, form in unknown_op(V.anc(e(u), e(a))).items():
                acc = forms.setdefault(key, {})
                for k, v in form.items():
                    acc[k] = acc.get(k, 0) - v
            emit(forms)
            forms = lin_times(None, X, rho)
            rhs = known(op_combo(M0.b_ops, V.act(e(a), e(u)), n))
            for key, val in rhs.items():
                acc = forms.setdefault(key, {})
                acc["c"] = acc.get("c", 0) - val
            emit(forms)
    part, kernel = solve_affine(rows, len(idx))
    zero = part is not None and not part and not kernel
    assoc_ok = None
    if part is not None and not kernel:
        ops = [_ident(n)] + [_zero(n) for _ in range(V.dimA - 1)]
        for (i, r, c), k in idx.items():
            if part.get(k):
                ops[i][c][r] = part[k]
        trial = AlgebroidModuleData(M0.names, ops, M0.b_ops)
        assoc_ok = not check_lie_algebroid_module(V, trial)
    return {"m": U.m, "consistent": part is not None, "particular": part, "kernel": kernel,
            "zero_space": zero, "assoc_ok": assoc_ok, "equations": len(rows), "unknowns": len(idx)}


def vbar_module_constraints(U) -> bool:
    """e0^2 = 0 and f0^2 = 0 on U (an Sl2Irrep or highest weight)."""
    if isinstance(U, int):
        U = sl2_irrep(U)
    return _is_zero(_compose(U.e, U.e)) and _is_zero(_compose(U.f, U.f))


def admissible_irreps(max_m: int) -> List[int]:
    return [m for m in range(max_m + 1) if vbar_module_constraints(m)]


# ---------------------------------------------------------------- graded modules

@dataclass
class GradedModule:
    engine: Engine
    bundle: RelationBundle
    dims_mb: List[int]
    dims: List[int]
    j_slices: Dict[int, Subspace]
    obstruction: Optional[str] = None
    stable: bool = True


def _relation_images(vac: Engine, T: Engine, words: Sequence[Dict[Word, Rat]], N: int) -> List[dict]:
    """v_n u for every relation word v, base vector u and mode n landing in degrees 0..N."""
    out = []
    for ws in words:
        deg = max(sum(vac.L.degree(g) for g in w) for w in ws) if ws else 0
        for u in range(T.base.dim):
            base = T.base_state(u)
            for n in range(deg - 1 - N, deg):
                s: dict = {}
                for w, c in ws.items():
                    axpy(s, c, vac.word_mode(w, n, base, target=T))
                for d, part in state_degrees(s).items():
                    if d <= N:
                        out.append(part)
    return out


def induce_module(V: VertexAlgebroid, U: AlgebroidModuleData, N: int = 5, P: int = 4,
                  extra_words: Sequence[Dict[Word, Rat]] = ()) -> GradedModule:
    """M_B(U): the induced module modulo the submodule generated by W(U)."""
    if check_lie_algebroid_module(V, U):
        raise ValueError("U is not a module for the Lie algebroid")
    T = Engine(V, U.base(), N=N, P=P)
    vac = Engine(V, N=N, P=P)
    words = list(basic_relation_words(V)) + list(extra_words)
    bundle = T.saturate(_relation_images(vac, T, words, N))
    dims = T.quotient_dims(bundle)
    obstruction = None
    if dims[0] != U.dim:
        obstruction = f"degree-0 slice has dim {dims[0]} instead of {U.dim}"
    return GradedModule(T, bundle, dims, dims, {}, obstruction)


def _max_submodule(G: GradedModule) -> None:
    """J(U): per degree, the vectors every lowering word sends to zero in degree 0."""
    T, b = G.engine, G.bundle
    gens = T.lowering_gens()
    total = {0: b.slice(0).copy()}
    J = {0: Subspace()}
    dims = [G.dims_mb[0]]
    for n in range(1, T.N + 1):
        qb = T.quotient_basis(b, n)
        cols = []
        for m in qb:
            img: dict = {}
            for gi, g in enumerate(gens):
                k = -T.L.degree(g)
                if k > n:
                    continue
                w = T.apply_gen(g, {m: Rat(1)})
                for key, c in total[n - k].reduce(w).items():
                    img[(gi, key)] = c
            cols.append(img)
        ker = kernel_combos(cols)
        Jn = Subspace()
        tn = b.slice(n).copy()
        for c in ker:
            v = {qb[i]: x for i, x in c.items()}
            Jn.add(v)
            tn.add(v)
        J[n], total[n] = Jn, tn
        dims.append(len(qb) - Jn.dim)
    G.j_slices = J
    G.dims = dims
    G._total = total


def l_module(V: VertexAlgebroid, U: AlgebroidModuleData, N: int = 5, P: int = 4,
             include_ebar: bool = False) -> GradedModule:
    """L(U) = M_B(U)/J(U); with include_ebar, also divide by the e(-1)e(-1)1 images first."""
    extra = []
    if include_ebar:
        vac = Engine(V, N=N, P=P)
        extra.append(square_word(vac, {V.metadata.get("e", "e"): 1}))
    G = induce_module(V, U, N, P, extra)
    if G.obstruction and include_ebar:
        G.obstruction = "e(-1)e(-1)1 relations reach degree 0: " + G.obstruction
    _max_submodule(G)
    return G


def j_closed(G: GradedModule) -> List[tuple]:
    """Generator modes that push a J(U) basis vector out of J(U) + relations."""
    T = G.engine
    bad = []
    for n, Jn in G.j_slices.items():
        for v in Jn.basis():
            for g in T.all_gens(T.N):
                k = n + T.L.degree(g)
                if 0 <= k <= T.N:
                    w = T.apply_gen(g, v)
                    if w and w not in G._total[k]:
                        bad.append((n, g))
    return bad


def trivial_module(V: VertexAlgebroid) -> AlgebroidModuleData:
    return irrep_module(V, 0)


def family_irrep_module(l: int, m: int) -> AlgebroidModuleData:
    return irrep_module(build_family(l).alg, m)


def probe_simple(G: GradedModule, n: int) -> bool:
    """Every nonzero degree-n basis vector of L(U) reaches degree 0 under lowering words."""
    T = G.engine
    total = G._total
    for m in T.quotient_basis(G.bundle, n):
        v = total[n].reduce({m: Rat(1)})
        if not v:
            continue
        frontier = [(n, v)]
        hit = False
        while frontier and not hit:
            d, x = frontier.pop()
            if d == 0:
                hit = bool(total[0].reduce(x))
                continue
            for g in T.lowering_gens():
                k = -T.L.degree(g)
                if k <= d:
                    y = total[d - k].reduce(T.apply_gen(g, x))
                    if y:
                        frontier.append((d - k, y))
        if not hit:
            return False
    return True
