from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix

from vabkit.qlinalg import (Rat, Subspace, fmt_rat, intersect, kernel_combos, parse_rat, solve_affine,
                            span_sum)

small = st.integers(-3, 3)
vectors = st.lists(st.dictionaries(st.integers(0, 5), small.filter(bool), max_size=6), max_size=6)


def as_matrix(vs, n=6):
    return Matrix([[v.get(k, 0) for k in range(n)] for v in vs]) if vs else Matrix.zeros(0, n)


def lin(vs, cs):
    out = {}
    for v, c in zip(vs, cs):
        for k, x in v.items():
            out[k] = out.get(k, 0) + c * x
    return {k: x for k, x in out.items() if x}


def test_rat_format_roundtrip():
    for s in ("0", "3", "-7/4", "1/3"):
        assert fmt_rat(parse_rat(s)) == s
    assert parse_rat(" 2/4 ") == Rat(1, 2)


@given(vectors)
def test_rank_matches_sympy(vs):
    assert Subspace(vs).dim == as_matrix(vs).rank()


@given(vectors, st.lists(small, min_size=6, max_size=6))
def test_span_membership(vs, cs):
    s = Subspace(vs)
    assert lin(vs, cs) in s
    assert all(not s.reduce(v) for v in vs)


@given(vectors)
def test_echelon_pivots_are_max_keys(vs):
    s = Subspace(vs)
    for k, row in s.rows.items():
        assert max(row) == k and row[k] == 1


@given(vectors, st.dictionaries(st.integers(0, 5), small, max_size=6))
def test_reduce_is_canonical(vs, w):
    s = Subspace(vs)
    r = s.reduce(w)
    assert not set(r) & s.pivots
    assert s.reduce(r) == r
    diff = dict(w)
    for k, x in r.items():
        diff[k] = diff.get(k, 0) - x
    assert {k: x for k, x in diff.items() if x} in s


@given(vectors, vectors)
def test_intersection_dimension_formula(a, b):
    A, B = Subspace(a), Subspace(b)
    I = intersect(A, B)
    assert A.dim + B.dim == span_sum(A, B).dim + I.dim
    assert all(v in A and v in B for v in I.basis())


@given(vectors)
def test_kernel_combos(vs):
    ker = kernel_combos(vs)
    assert len(ker) == len(vs) - Subspace(vs).dim
    for c in ker:
        assert not lin(vs, [c.get(i, 0) for i in range(len(vs))])


def test_solve_affine():
    part, ker = solve_affine([{0: 1, 1: 1, "c": -3}, {0: 1, 1: -1, "c": -1}], 2)
    assert part == {0: 2, 1: 1} and ker == []
    part, ker = solve_affine([{0: 1, "c": -3}, {0: 2, "c": -5}], 1)
    assert part is None


def test_canonical_is_reduced():
    s = Subspace([{0: 1, 1: 1, 2: 1}, {1: 1, 2: 2}])
    rows = s.canonical()
    piv = [max(r) for r in rows]
    for r in rows:
        assert all(k == max(r) or k not in piv for k in r)
