from hypothesis import given
from hypothesis import strategies as st

from vabkit.algebroid import build_family
from vabkit.loop_lie import LoopAlgebra, check_jacobi
from vabkit.qlinalg import Rat, axpy

L1 = LoopAlgebra(build_family(1).alg)
ONE = Rat(1)


def test_zero_mode_complement():
    assert L1.zero_modes == [0, 1, 2]


def test_a_mode_rewrites():
    a10 = L1.V.A.names.index("a1_0")
    d10 = L1.V.B_names.index("d1_0")
    assert L1.reduce({a10: ONE}, 0) == {("B", d10, 1): -ONE}
    assert L1.reduce({a10: ONE}, -2) == {("B", d10, -1): ONE}
    assert L1.reduce({0: ONE}, 3) == {}


def test_ef_bracket():
    assert L1.bracket_gen(("B", 0, 1), ("B", 1, -1)) == {("B", 2, 0): ONE, ("A", 0, -1): ONE}


def test_mode_zero_reduced_mod_dA():
    d10 = L1.V.B_names.index("d1_0")
    assert L1.b_mode({d10: ONE}, 0) == {}


def test_jacobi_window():
    assert check_jacobi(L1, 2) == []


gens = st.sampled_from(L1.generators(3))
elts = st.dictionaries(gens, st.integers(-2, 2).filter(bool), max_size=3)


@given(elts, elts)
def test_antisymmetry(x, y):
    s = L1.bracket(x, y)
    assert not axpy(s, 1, L1.bracket(y, x))


@given(elts, elts, elts)
def test_jacobi_random(x, y, z):
    lhs = L1.bracket(x, L1.bracket(y, z))
    axpy(lhs, -1, L1.bracket(L1.bracket(x, y), z))
    axpy(lhs, -1, L1.bracket(y, L1.bracket(x, z)))
    assert not lhs


@given(gens, gens)
def test_bracket_is_graded(x, y):
    for g in L1.bracket_gen(x, y):
        assert L1.degree(g) == L1.degree(x) + L1.degree(y)
