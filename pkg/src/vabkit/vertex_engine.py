"""Induced modules over the mode algebra, as exact PBW states.

A state is a dict ``(factors, base) -> Rat`` where ``factors`` is a
tuple of creation operators ``(n, j)`` meaning ``b_j(-n)``, sorted by
(n descending, j ascending), and ``base`` indexes a basis vector of a
degree-zero module U.

The vacuum algebra is handled as the induced module over U = A, with a(-1)
acting by multiplication and b(0) by the anchor.  This is the quotient of
the full vacuum module by the submodule generated from the degree-zero
relations 1(-1)1 = 1, a(-1)a'(-1)1 = (aa')(-1)1, so every a(-1)-polynomial is
collapsed into a single base label.  The filtration cap P still bounds the
number of a(-1) factors a word may carry before that collapse.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebroid import VertexAlgebroid
from .leibniz import Operator
from .loop_lie import Gen, LoopAlgebra, LoopElt
from .qlinalg import Rat, Subspace, axpy, scale

Factor = Tuple[int, int]
Mono = Tuple[Tuple[Factor, ...], int]
State = Dict[Mono, Rat]


class CapBreach(RuntimeError):
    """A result left the (degree, filtration) window."""


class UnstableSaturation(RuntimeError):
    """Raising the filtration cap changed the computed dimensions."""


class _Escape(Exception):
    pass


@dataclass
class BaseModule:
    """Degree-zero data: how a(-1) and b(0) act on the base space U."""
    names: List[str]
    a_ops: List[Operator]
    b_ops: List[Operator]
    vacuum: bool = False

    @property
    def dim(self):
        return len(self.names)


def vacuum_base(V: VertexAlgebroid) -> BaseModule:
    n = V.dimA
    a_ops = [[V.mul({i: Rat(1)}, {k: Rat(1)}) for k in range(n)] for i in range(n)]
    b_ops = [[V.anc({j: Rat(1)}, {k: Rat(1)}) for k in range(n)] for j in range(V.dimB)]
    return BaseModule(list(V.A.names), a_ops, b_ops, vacuum=True)


def mono_degree(m: Mono) -> int:
    return sum(n for n, _ in m[0])


def state_degrees(s: State) -> Dict[int, State]:
    out: Dict[int, State] = {}
    for m, c in s.items():
        out.setdefault(mono_degree(m), {})[m] = c
    return out


def colored_monomials(n: int, colors: int) -> List[Tuple[Factor, ...]]:
    """All sorted creation words of total degree n."""
    out = []

    def rec(rem, maxf, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for depth in range(min(rem, maxf[0]), 0, -1):
            j0 = maxf[1] if depth == maxf[0] else 0
            for j in range(j0, colors):
                acc.append((depth, j))
                rec(rem - depth, (depth, j), acc)
                acc.pop()

    rec(n, (n, 0), [])
    return out


def _pbw_le(f: Factor, g: Factor) -> bool:
    return (-f[0], f[1]) <= (-g[0], g[1])


@dataclass
class RelationBundle:
    N: int
    P: int
    slices: Dict[int, Subspace]
    escapes: int = 0
    kinds: Dict[str, int] = field(default_factory=dict)

    def slice(self, n: int) -> Subspace:
        return self.slices.get(n, Subspace())


class Engine:
    """Mode action on an induced module, truncated at degree N."""

    def __init__(self, V: VertexAlgebroid, base: Optional[BaseModule] = None, N: int = 6, P: int = 4,
                 capped: bool = True):
        if N < 0 or P < 0:
            raise ValueError("N and P must be non-negative")
        self.V = V
        self.L = LoopAlgebra(V)
        self.base = base if base is not None else vacuum_base(V)
        self.N, self.P, self.capped = N, P, capped
        self._memo: Dict[Tuple[Gen, Mono], State] = {}
        self._dmemo: Dict[Mono, State] = {}
        self._cmemo: Dict[tuple, State] = {}
        self.escapes = 0

    # ------------------------------------------------------------ basics
    @property
    def vacuum(self) -> State:
        return {((), 0): Rat(1)}

    def base_state(self, u: int) -> State:
        return {((), u): Rat(1)}

    def fil(self, m: Mono) -> int:
        return 1 if (self.base.vacuum and m[1] != 0) else 0

    def ambient_bases(self) -> List[int]:
        if self.base.vacuum and self.P < 1:
            return [0]
        return list(range(self.base.dim))

    def ambient(self, n: int) -> List[Mono]:
        bases = self.ambient_bases()
        return [(w, u) for w in colored_monomials(n, self.V.dimB) for u in bases]

    def pure_b(self, n: int) -> List[Mono]:
        return [(w, 0) for w in colored_monomials(n, self.V.dimB)]

    # ------------------------------------------------------------ actions
    def _base_action(self, g: Gen, u: int) -> State:
        kind, j, n = g
        if kind == "B":
            if n > 0:
                return {}
            col = self.base.b_ops[j][u]
        else:
            if self.base.vacuum and j != 0 and u != 0 and self.P < 2:
                raise _Escape
            if self.base.vacuum and j != 0 and self.P < 1:
                raise _Escape
            col = self.base.a_ops[j][u]
        return {((), k): c for k, c in col.items()}

    def _apply(self, g: Gen, m: Mono) -> State:
        key = (g, m)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        factors, u = m
        if g[0] == "B" and g[2] < 0:
            f = (-g[2], g[1])
            if not factors or _pbw_le(f, factors[0]):
                out = {((f,) + factors, u): Rat(1)}
            else:
                y = factors[0]
                rest = (factors[1:], u)
                out = self._apply_state(("B", y[1], -y[0]), self._apply(g, rest))
                axpy(out, 1, self._apply_elt_mono(self.L.bracket_gen(g, ("B", y[1], -y[0])), rest))
        elif not factors:
            out = self._base_action(g, u)
        else:
            y = factors[0]
            yg = ("B", y[1], -y[0])
            rest = (factors[1:], u)
            out = self._apply_state(yg, self._apply(g, rest))
            axpy(out, 1, self._apply_elt_mono(self.L.bracket_gen(g, yg), rest))
        self._memo[key] = out
        return out

    def _apply_state(self, g: Gen, s: State) -> State:
        out: State = {}
        for m, c in s.items():
            axpy(out, c, self._apply(g, m))
        return out

    def _apply_elt_mono(self, X: LoopElt, m: Mono) -> State:
        out: State = {}
        for g, c in X.items():
            axpy(out, c, self._apply(g, m))
        return out

    def apply_elt(self, X: LoopElt, s: State) -> State:
        out: State = {}
        for g, c in X.items():
            for m, d in s.items():
                axpy(out, c * d, self._apply(g, m))
        return out

    def _guard(self, s: State) -> State:
        for m in s:
            if mono_degree(m) > self.N or (self.fil(m) > self.P):
                self.escapes += 1
                if self.capped:
                    raise _Escape
                raise CapBreach(f"state leaves the window N={self.N}, P={self.P}")
        return s

    def _checked(self, fn, *args) -> State:
        try:
            return self._guard(fn(*args))
        except _Escape:
            if not self.capped:
                raise CapBreach(f"filtration cap P={self.P} exceeded")
            self.escapes += 1
            raise

    def apply_mode(self, x: Tuple[str, int], m: int, s: State) -> State:
        """x(m) applied to s, for a basis element x = ('A', i) or ('B', j)."""
        try:
            return self._checked(self.apply_elt, self.L.gen(x[0], x[1], m), s)
        except _Escape:
            return {}

    def apply_gen(self, g: Gen, s: State) -> State:
        return self.apply_elt({g: Rat(1)}, s)

    def apply_word(self, word: Sequence[Gen], s: State) -> State:
        """Apply generators right to left: word[0] acts last."""
        for g in reversed(word):
            s = self.apply_gen(g, s)
        return s

    # ------------------------------------------------------------ D
    def _d_mono(self, m: Mono) -> State:
        hit = self._dmemo.get(m)
        if hit is not None:
            return hit
        if not self.base.vacuum:
            raise ValueError("D is only defined on the vacuum module")
        factors, a = m
        word = [("B", j, -n) for n, j in factors]
        out: State = {}
        # D(a(-1)1) = (da)(-1)1
        tail = self.apply_elt(self.L.b_mode(self.V.d({a: Rat(1)}), -1), self.vacuum) if a else {}
        if tail:
            axpy(out, 1, self.apply_word(word, tail))
        base = self.base_state(a)
        for i, (n, j) in enumerate(factors):
            w = list(word)
            w[i] = ("B", j, -n - 1)
            axpy(out, n, self.apply_word(w, base))
        self._dmemo[m] = out
        return out

    def d_operator(self, s: State) -> State:
        out: State = {}
        for m, c in s.items():
            axpy(out, c, self._d_mono(m))
        return out

    # ------------------------------------------------------------ composite modes
    def composite_mode(self, u: State, m: int, w: State, target: "Engine" = None) -> State:
        """u_m w for u in this (vacuum) module and w in ``target`` (default: self)."""
        target = target or self
        out: State = {}
        for um, c in u.items():
            for wm, d in w.items():
                axpy(out, c * d, self._comp(um, m, wm, target))
        return out

    def _comp(self, um: Mono, m: int, wm: Mono, T: "Engine") -> State:
        key = (id(T), um, m, wm)
        hit = self._cmemo.get(key)
        if hit is not None:
            return hit
        factors, a = um
        du, dw = mono_degree(um), mono_degree(wm)
        if du + dw - m - 1 < 0:
            out: State = {}
        elif not factors:
            if a == 0:
                out = {wm: Rat(1)} if m == -1 else {}
            else:
                out = T.apply_elt(self.L.a_mode({a: Rat(1)}, m), {wm: Rat(1)})
        else:
            n, j = factors[0]
            rest = (factors[1:], a)
            drest = du - n
            out = {}
            sign = -1 if n % 2 else 1
            i = 0
            while True:
                more = False
                coef = comb(n + i - 1, i)
                if drest + dw - (m + i) - 1 >= 0:
                    more = True
                    inner = self._comp(rest, m + i, wm, T)
                    if inner:
                        axpy(out, coef, T.apply_elt(self.L.b_mode({j: Rat(1)}, -n - i), inner))
                if i <= dw:
                    more = True
                    xw = T.apply_elt(self.L.b_mode({j: Rat(1)}, i), {wm: Rat(1)})
                    for m2, c2 in xw.items():
                        axpy(out, -sign * coef * c2, self._comp(rest, m - n - i, m2, T))
                if not more:
                    break
                i += 1
        self._cmemo[key] = out
        return out

    def _field_mode(self, g: Gen, k: int) -> LoopElt:
        e = {g[1]: Rat(1)}
        return self.L.a_mode(e, k) if g[0] == "A" else self.L.b_mode(e, k)

    def word_mode(self, word: Sequence[Gen], m: int, w: State, target: "Engine" = None) -> State:
        """(x1(-n1) ... xk(-nk) 1)_m w computed from the word itself.

        Unlike composite_mode this never collapses a(-1)-products first, so
        it is the right tool when the target is not a module for that
        quotient (e.g. images of the degree-zero relations in M(U)).
        """
        target = target or self
        out: State = {}
        for wm, c in w.items():
            axpy(out, c, self._wmode(tuple(word), m, wm, target))
        return out

    def _wmode(self, word: Tuple[Gen, ...], m: int, wm: Mono, T: "Engine") -> State:
        key = ("w", id(T), word, m, wm)
        hit = self._cmemo.get(key)
        if hit is not None:
            return hit
        dw = mono_degree(wm)
        if not word:
            out: State = {wm: Rat(1)} if m == -1 else {}
        else:
            g, rest = word[0], word[1:]
            n = -g[2]
            drest = sum(self.L.degree(x) for x in rest)
            out = {}
            if drest + n + dw - m - 1 >= 0:
                sign = -1 if n % 2 else 1
                i = 0
                while True:
                    more = False
                    coef = comb(n + i - 1, i)
                    if drest + dw - (m + i) - 1 >= 0:
                        more = True
                        inner = self._wmode(rest, m + i, wm, T)
                        if inner:
                            axpy(out, coef, T.apply_elt(self._field_mode(g, -n - i), inner))
                    if i <= dw:
                        more = True
                        xw = T.apply_elt(self._field_mode(g, i), {wm: Rat(1)})
                        for m2, c2 in xw.items():
                            axpy(out, -sign * coef * c2, self._wmode(rest, m - n - i, m2, T))
                    if not more:
                        break
                    i += 1
        self._cmemo[key] = out
        return out

    # ------------------------------------------------------------ generators
    def _lie_generators(self, sign: int) -> List[Gen]:
        """Generators of the positive (sign=-1, creation) or negative (sign=+1)
        part of the mode algebra up to degree N, picked degree by degree."""
        L = self.L
        gens: List[Gen] = []
        spans: Dict[int, Subspace] = {}
        for d in range(1, self.N + 1):
            full = [("B", j, sign * d) for j in range(self.V.dimB)]
            W = Subspace()
            for g in gens:
                k = abs(L.degree(g))
                if d - k >= 1:
                    for w in spans[d - k].basis():
                        W.add(L.bracket({g: Rat(1)}, w))
            for g in full:
                if {g: Rat(1)} not in W:
                    gens.append(g)
                    W.add({g: Rat(1)})
            spans[d] = W
        return gens

    def raising_gens(self) -> List[Gen]:
        if not hasattr(self, "_rg"):
            self._rg = self._lie_generators(-1)
        return self._rg

    def lowering_gens(self) -> List[Gen]:
        if not hasattr(self, "_lg"):
            self._lg = self._lie_generators(1)
        return self._lg

    def zero_gens(self) -> List[Gen]:
        out: List[Gen] = [("A", i, -1) for i in range(self.V.dimA) if not (self.base.vacuum and i == 0)]
        out += [("B", j, 0) for j in self.L.zero_modes]
        return out

    def all_gens(self, M: int) -> List[Gen]:
        return self.L.generators(M)

    # ------------------------------------------------------------ saturation
    def saturate(self, seeds: Iterable[State], top: Optional[int] = None) -> RelationBundle:
        """Smallest family of graded slices (degrees <= top, default N) containing
        the seeds and closed under every mode and under D inside the window.

        Seeds and their lowering/degree-zero descendants are closed under
        everything; all other vectors only under creation modes, which
        suffices by the PBW splitting of the enveloping algebra.
        """
        top = self.N if top is None else min(top, self.N)
        slices: Dict[int, Subspace] = {}
        q = deque()
        for s in seeds:
            for deg, part in sorted(state_degrees(s).items()):
                q.append((deg, part, "K"))
        rg, lg, zg = self.raising_gens(), self.lowering_gens(), self.zero_gens()
        vac = self.base.vacuum
        esc0 = self.escapes
        kinds = {"K": 0, "R": 0}

        def push(deg, g, v, kind):
            try:
                w = self._checked(self.apply_gen, g, v)
            except _Escape:
                return
            if w:
                q.append((deg, w, kind))

        while q:
            deg, v, kind = q.popleft()
            if any(self.fil(m) > self.P for m in v):
                self.escapes += 1
                continue
            sl = slices.setdefault(deg, Subspace())
            if sl.add(v) is None:
                continue
            kinds[kind] += 1
            for g in rg:
                nd = deg + self.L.degree(g)
                if nd <= top:
                    push(nd, g, v, "R")
            if kind == "K":
                for g in lg:
                    nd = deg + self.L.degree(g)
                    if nd >= 0:
                        push(nd, g, v, "K")
                for g in zg:
                    push(deg, g, v, "K")
                if vac and deg + 1 <= top:
                    try:
                        w = self._checked(self.d_operator, v)
                    except _Escape:
                        w = {}
                    if w:
                        q.append((deg + 1, w, "R"))
        for d in list(slices):
            if d > top:
                del slices[d]
        return RelationBundle(self.N, self.P, slices, self.escapes - esc0, kinds)

    def verify_closed(self, bundle: RelationBundle, M: Optional[int] = None) -> List[tuple]:
        """One more round of every generator mode (and D) on every slice basis vector."""
        M = self.N if M is None else M
        bad = []
        for deg, sl in sorted(bundle.slices.items()):
            for v in sl.basis():
                for g in self.all_gens(M):
                    nd = deg + self.L.degree(g)
                    if nd < 0 or nd > max(bundle.slices, default=0):
                        continue
                    try:
                        w = self._checked(self.apply_gen, g, v)
                    except _Escape:
                        continue
                    if w and w not in bundle.slice(nd):
                        bad.append((deg, g))
                if self.base.vacuum and deg + 1 in bundle.slices:
                    w = self.d_operator(v)
                    if w and w not in bundle.slice(deg + 1):
                        bad.append((deg, "D"))
        return bad

    def commutator_check(self, M: int = 2, D: int = 3) -> List[tuple]:
        """[x(m), y(n)] s against the bracket in the mode algebra, on every
        ambient basis state s of degree <= D."""
        gens = self.all_gens(M)
        bad = []
        states = [m for n in range(D + 1) for m in self.ambient(n)]
        for i, x in enumerate(gens):
            for y in gens[i:]:
                br = self.L.bracket_gen(x, y)
                for m in states:
                    s = {m: Rat(1)}
                    try:
                        lhs = self.apply_gen(x, self.apply_gen(y, s))
                        axpy(lhs, -1, self.apply_gen(y, self.apply_gen(x, s)))
                        axpy(lhs, -1, self.apply_elt(br, s))
                    except _Escape:
                        continue
                    if lhs:
                        bad.append((x, y, m))
        return bad

    # ------------------------------------------------------------ quotients
    def quotient_dims(self, bundle: RelationBundle, top: Optional[int] = None) -> List[int]:
        top = self.N if top is None else top
        return [len(self.ambient(n)) - bundle.slice(n).dim for n in range(top + 1)]

    def pure_b_spans(self, bundle: RelationBundle, n: int) -> bool:
        """Pure creation words (times the vacuum) span the quotient in degree n."""
        s = bundle.slice(n).copy()
        for m in self.pure_b(n):
            s.add({m: Rat(1)})
        return s.dim == len(self.ambient(n))

    def quotient_basis(self, bundle: RelationBundle, n: int) -> List[Mono]:
        """Non-pivot monomials: a basis of the degree-n quotient."""
        piv = bundle.slice(n).rows
        return [m for m in self.ambient(n) if m not in piv]

    def member(self, bundle: RelationBundle, v: State) -> bool:
        return all(part in bundle.slice(d) for d, part in state_degrees(v).items())


# ---------------------------------------------------------------- seeds

Word = Tuple[Gen, ...]
WordSum = Dict[Word, Rat]


def d_words(L: LoopAlgebra, ws: WordSum) -> WordSum:
    """D on words applied to the vacuum: D 1 = 0, [D, x(n)] = -n x(n-1)."""
    out: WordSum = {}
    for w, c in ws.items():
        for i, g in enumerate(w):
            if g[0] == "A":
                rep = L.a_mode({g[1]: Rat(1)}, -2)
            else:
                rep = scale(-g[2], L.b_mode({g[1]: Rat(1)}, g[2] - 1)) if g[2] else {}
            for h, x in rep.items():
                nw = w[:i] + (h,) + w[i + 1:]
                axpy(out, c * x, {nw: Rat(1)})
    return out


def eval_words(E: Engine, ws: WordSum) -> State:
    out: State = {}
    for w, c in ws.items():
        try:
            axpy(out, c, E._checked(E.apply_word, list(w), E.vacuum))
        except _Escape:
            raise
    return out


def basic_relation_words(V: VertexAlgebroid) -> List[WordSum]:
    """1(-1)1 - 1, a(-1)a'(-1)1 - (aa')(-1)1 and a(-1)b(-1)1 - (a.b)(-1)1."""
    one = Rat(1)
    out: List[WordSum] = [{(("A", 0, -1),): one, (): -one}]
    for a in range(V.dimA):
        for a2 in range(a, V.dimA):
            ws: WordSum = {(("A", a, -1), ("A", a2, -1)): one}
            for k, c in V.mul({a: one}, {a2: one}).items():
                axpy(ws, -c, {(("A", k, -1),): one})
            out.append(ws)
    for a in range(V.dimA):
        for b in range(V.dimB):
            ws = {(("A", a, -1), ("B", b, -1)): one}
            for k, c in V.act({a: one}, {b: one}).items():
                axpy(ws, -c, {(("B", k, -1),): one})
            out.append(ws)
    return out


def relation_seeds(E: Engine, extra: Sequence[WordSum] = (), include_basic: bool = True) -> List[State]:
    """Seeds of the relation ideal, with their D-images up to degree N."""
    words = list(basic_relation_words(E.V)) if include_basic else []
    words += list(extra)
    seeds: List[State] = []
    for ws in words:
        cur = ws
        for _ in range(E.N + 1):
            try:
                s = eval_words(E, cur)
            except _Escape:
                s = None
            if s is not None:
                if s and min(state_degrees(s)) > E.N:
                    break
                parts = {d: p for d, p in state_degrees(s).items() if d <= E.N}
                for p in parts.values():
                    seeds.append(p)
            cur = d_words(E.L, cur)
            if not cur:
                break
    return seeds


def word_state(E: Engine, names: Sequence[Tuple[str, int]]) -> State:
    """x1(m1) x2(m2) ... 1 from (name, mode) pairs."""
    s = E.vacuum
    for name, mode in reversed(list(names)):
        kind, idx = E.V.index_of(name)
        s = E.apply_elt(E.L.gen(kind, idx, mode), s)
    return s


def square_word(E: Engine, coeffs: Dict[str, Rat]) -> WordSum:
    """(x(-1))^2 1 for x = sum c_b b, as a word sum."""
    ws: WordSum = {}
    items = [(E.V.index_of(n)[1], Rat(c)) for n, c in coeffs.items()]
    for i, c in items:
        for j, d in items:
            axpy(ws, c * d, {(("B", i, -1), ("B", j, -1)): Rat(1)})
    return ws


def graded_dims(V: VertexAlgebroid, N: int = 6, P: int = 4, extra: Sequence[WordSum] = (),
                check_stability: bool = True, top: Optional[int] = None) -> dict:
    """Quotient dimensions by degree, with the P versus P+1 stability check."""
    runs = []
    for p in ((P, P + 1) if check_stability else (P,)):
        E = Engine(V, N=N, P=p)
        bundle = E.saturate(relation_seeds(E, extra), top=top)
        runs.append((E, bundle, E.quotient_dims(bundle, top)))
    dims = runs[0][2]
    stable = all(r[2] == dims for r in runs)
    if check_stability and not stable:
        raise UnstableSaturation(f"dims {dims} at P={P} but {runs[1][2]} at P={P + 1}")
    E, bundle, _ = runs[0]
    return {"dims": dims, "stable": stable, "engine": E, "bundle": bundle,
            "escapes": bundle.escapes, "P": P, "N": N}
