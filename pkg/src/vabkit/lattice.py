"""Rank-one lattice vertex operators on M(1) x C[L°], L = Z alpha, (alpha, alpha) = 2.

A basis state is ``(mu, k)``: ``mu`` a partition (tuple, descending) listing
the depths of alpha(-n) factors and ``k`` the label of e^{k alpha / 2}.  Its
weight is |mu| + k^2/4.  Even k is the sector L, odd k the sector L + alpha/2,
which is regraded down by 1/4 so both sectors are N-graded.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Tuple

from sympy.functions.combinatorial.numbers import partition as _npart
from sympy.utilities.iterables import partitions as _partitions

from .algebroid import build_family, degenerate_sl2
from .loop_lie import Gen, LoopAlgebra, check_jacobi
from .qlinalg import Rat, axpy
from .vertex_engine import CapBreach

LState = Tuple[Tuple[int, ...], int]
Vec = Dict[LState, Rat]

HALF_SHIFT = Rat(1, 4)


def p(n: int) -> int:
    return int(_npart(n)) if n >= 0 else 0


def weight(s: LState) -> Rat:
    return sum(s[0]) + Rat(s[1] * s[1], 4)


def degree(s: LState) -> int:
    """Weight with the 1/4 removed on the odd sector."""
    w = weight(s) - (HALF_SHIFT if s[1] % 2 else 0)
    return int(w)


def sector(k: int) -> str:
    return "L" if k % 2 == 0 else "Lhalf"


def _part_tuple(d: Dict[int, int]) -> Tuple[int, ...]:
    return tuple(sorted((m for m, r in d.items() for _ in range(r)), reverse=True))


def all_partitions(n: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    return [_part_tuple(d) for d in _partitions(n)]


def basis(sec: str, n: int) -> List[LState]:
    """All basis states of the given sector at (regraded) degree n."""
    out = []
    odd = sec != "L"
    k = 0
    while True:
        if odd:
            ks = [2 * k + 1, -2 * k - 1]
        else:
            ks = [2 * k, -2 * k] if k else [0]
        rem = [n - degree(((), kk)) for kk in ks]
        if all(r < 0 for r in rem):
            break
        for kk, r in zip(ks, rem):
            if r >= 0:
                out.extend((mu, kk) for mu in all_partitions(r))
        k += 1
    return sorted(set(out))


def graded_dim_oracle(sec: str, n: int) -> int:
    if n < 0:
        return 0
    if sec == "L":
        f = lambda k: n - k * k
    elif sec == "Lhalf":
        f = lambda k: n - k * k - k
    else:
        raise ValueError(f"unknown sector {sec!r}")
    total, k = 0, 0
    while True:
        terms = [f(k)] + ([f(-k)] if k else [])
        if all(t < 0 for t in terms):
            return total
        total += sum(p(t) for t in terms)
        k += 1


# ---------------------------------------------------------------- operators

def _add_part(mu, m):
    return tuple(sorted(mu + (m,), reverse=True))


def alpha_mode(n: int, s: Vec) -> Vec:
    out: Vec = {}
    for (mu, k), c in s.items():
        if n < 0:
            axpy(out, c, {(_add_part(mu, -n), k): Rat(1)})
        elif n == 0:
            if k:
                axpy(out, c * k, {(mu, k): Rat(1)})
        else:
            r = mu.count(n)
            if r:
                nu = list(mu)
                nu.remove(n)
                axpy(out, c * 2 * n * r, {(tuple(nu), k): Rat(1)})
    return out


@lru_cache(maxsize=None)
def _exp_terms(sign: int, deg: int, creation: bool) -> Tuple[Tuple[Tuple[int, ...], Rat], ...]:
    """Degree-deg part of exp(+-sum beta(-+m) z^{+-m}/m) as (parts, coefficient).

    Creation uses +sign/m per factor, annihilation -sign/m.
    """
    out = []
    for mu in all_partitions(deg):
        cnt = Counter(mu)
        c = Rat(1)
        for m, r in cnt.items():
            base = Rat(sign, m) if creation else Rat(-sign, m)
            c *= base ** r / factorial(r)
        out.append((mu, c))
    return tuple(out)


def _apply_parts(parts, s: Vec, creation: bool) -> Vec:
    for m in parts:
        s = alpha_mode(-m if creation else m, s)
        if not s:
            break
    return s


@dataclass
class LatticeContext:
    N: int = 12
    escapes: int = field(default=0)

    def exp_vertex_mode(self, sign: int, n: int, s: Vec) -> Vec:
        return exp_vertex_mode(sign, n, s, self)


def exp_vertex_mode(sign: int, n: int, s: Vec, ctx: LatticeContext = None) -> Vec:
    """Coefficient of z^{-n-1} in Y(e^{sign alpha}, z) applied to s."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out: Vec = {}
    for (mu, k), c in s.items():
        shift = sign * k
        st = {(mu, k): Rat(1)}
        for pa in range(sum(mu) + 1):
            pc = -n - 1 - shift + pa
            if pc < 0:
                continue
            for parts, ca in _exp_terms(sign, pa, False):
                low = _apply_parts(parts, st, False)
                if not low:
                    continue
                low = {(m2, k2 + 2 * sign): x for (m2, k2), x in low.items()}
                for parts2, cc in _exp_terms(sign, pc, True):
                    axpy(out, c * ca * cc, _apply_parts(parts2, low, True))
    if ctx is not None:
        for st in out:
            if degree(st) > ctx.N:
                ctx.escapes += 1
                raise CapBreach(f"state of degree {degree(st)} beyond N={ctx.N}")
    return out


def vec(mu=(), k=0) -> Vec:
    return {(tuple(sorted(mu, reverse=True)), k): Rat(1)}


def states_upto(D: int, sectors=("L", "Lhalf")) -> Iterator[LState]:
    for sec in sectors:
        for n in range(D + 1):
            yield from basis(sec, n)


# ---------------------------------------------------------------- checks

def heisenberg_check(D: int = 4, M: int = 4) -> List[tuple]:
    bad = []
    for s in states_upto(D):
        v = {s: Rat(1)}
        for m in range(-M, M + 1):
            for n in range(-M, M + 1):
                lhs = alpha_mode(m, alpha_mode(n, v))
                axpy(lhs, -1, alpha_mode(n, alpha_mode(m, v)))
                if m + n == 0:
                    axpy(lhs, -2 * m, v)
                if lhs:
                    bad.append((s, m, n))
    return bad


def l0(s: Vec) -> Vec:
    out: Vec = {}
    axpy(out, HALF_SHIFT, alpha_mode(0, alpha_mode(0, s)))
    top = max((sum(mu) for mu, _ in s), default=0)
    for j in range(1, top + 1):
        axpy(out, Rat(1, 2), alpha_mode(-j, alpha_mode(j, s)))
    return out


def l0_check(D: int = 4) -> List[tuple]:
    bad = []
    for s in states_upto(D):
        got = l0({s: Rat(1)})
        want = {s: weight(s)} if weight(s) else {}
        if axpy(got, -1, want):
            bad.append((s, weight(s)))
    return bad


class FamilyRep:
    """The dictionary h -> alpha, e -> e^alpha, f -> e^-alpha, rest of A, B -> 0, id -> 1."""

    def __init__(self, l: int = 1):
        self.V = build_family(l).alg
        self.L = LoopAlgebra(self.V)
        self.ids = {name: self.V.B_names.index(name) for name in ("e", "f", "h")}

    def gen(self, g: Gen, s: Vec) -> Vec:
        kind, j, n = g
        if kind == "A":
            return dict(s) if j == 0 else {}
        if j == self.ids["h"]:
            return alpha_mode(n, s)
        if j == self.ids["e"]:
            return exp_vertex_mode(1, n, s)
        if j == self.ids["f"]:
            return exp_vertex_mode(-1, n, s)
        return {}

    def elt(self, X, s: Vec) -> Vec:
        out: Vec = {}
        for g, c in X.items():
            axpy(out, c, self.gen(g, s))
        return out


def bracket_match_check(M: int = 3, D: int = 3, l: int = 1) -> List[tuple]:
    """[rho(x), rho(y)] = rho([x, y]) for all generators with modes in [-M, M]."""
    R = FamilyRep(l)
    gens = R.L.generators(M)
    bad = []
    states = list(states_upto(D))
    for i, x in enumerate(gens):
        for y in gens[i:]:
            br = R.L.bracket_gen(x, y)
            for s in states:
                v = {s: Rat(1)}
                lhs = R.gen(x, R.gen(y, v))
                axpy(lhs, -1, R.gen(y, R.gen(x, v)))
                if axpy(lhs, -1, R.elt(br, v)):
                    bad.append((x, y, s))
    return bad


def normal_square(s1: int, s2: int, t: int, v: Vec) -> Vec:
    """(e^{s1 alpha}_{-1} e^{s2 alpha})_t v as the normal-ordered mode sum."""
    out: Vec = {}
    top = max((degree(st) for st in v), default=0) + abs(t) + 4
    for j in range(0, top + 1):
        axpy(out, 1, exp_vertex_mode(s1, -1 - j, exp_vertex_mode(s2, t + j, v)))
        axpy(out, 1, exp_vertex_mode(s2, t - 1 - j, exp_vertex_mode(s1, j, v)))
    return out


def square_zero_check(D: int = 4, T: int = 4) -> List[tuple]:
    """Y(e^alpha, z)^2 = 0 = Y(e^-alpha, z)^2 on states of degree <= D, |t| <= T."""
    bad = []
    for s in states_upto(D):
        v = {s: Rat(1)}
        for sign in (1, -1):
            for t in range(-T, T + 1):
                if normal_square(sign, sign, t, v):
                    bad.append((s, sign, t))
    return bad


def affine_l10_dims(N: int = 5, P: int = 4) -> List[int]:
    """Graded dims of the level-one affine quotient built by the engine."""
    from .vertex_engine import Engine, graded_dims, square_word
    V = degenerate_sl2()
    E = Engine(V, N=N, P=P)
    return graded_dims(V, N=N, P=P, extra=[square_word(E, {"e": 1})])["dims"]


def loop_jacobi_report(M: int = 3, l: int = 1) -> List[tuple]:
    return check_jacobi(LoopAlgebra(build_family(l).alg), M)
