import pytest
from hypothesis import given
from hypothesis import strategies as st

from vabkit.algebroid import build_family
from vabkit.leibniz import (LeibnizAlgebra, StructuralError, adjoint_ops, check_ideal, check_leibniz,
                            check_levi_setup, check_module, derived_series, is_solvable, leib_ideal)
from vabkit.qlinalg import Rat, Subspace, axpy

ONE = Rat(1)


def sl2():
    br = {(i, j): {} for i in range(3) for j in range(3)}
    br.update({(0, 1): {2: ONE}, (1, 0): {2: -ONE}, (2, 0): {0: Rat(2)}, (0, 2): {0: Rat(-2)},
               (2, 1): {1: Rat(-2)}, (1, 2): {1: Rat(2)}})
    return LeibnizAlgebra(["e", "f", "h"], br)


def test_lie_algebra_is_leibniz_with_zero_leib():
    L = sl2()
    assert check_leibniz(L) == []
    assert leib_ideal(L).dim == 0
    assert check_module(L, adjoint_ops(L), 3) == []


def test_non_leibniz_bracket_is_reported():
    L = sl2()
    L.bracket[(0, 1)] = {0: ONE}
    assert check_leibniz(L)


def test_missing_entry_is_structural_error():
    L = sl2()
    del L.bracket[(1, 1)]
    with pytest.raises(StructuralError):
        check_leibniz(L)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_family_leibniz_structure(l):
    fam = build_family(l)
    L = fam.alg.leibniz()
    assert check_leibniz(L) == []
    leib = leib_ideal(L)
    assert leib.dim == 2 * l
    assert check_ideal(L, leib) == (True, True)
    assert is_solvable(L, leib)
    assert check_levi_setup(L, fam.e, fam.f, fam.h) == []


def test_leib_acts_trivially_check():
    # the adjoint module of a non-Lie Leibniz algebra: Leib acts nonzero from the left
    L = build_family(1).alg.leibniz()
    bad = check_module(L, adjoint_ops(L), L.dim)
    assert not any(b[0] == "axiom" for b in bad)


def test_derived_series_of_sl2_is_constant():
    L = sl2()
    series = derived_series(L)
    assert [s.dim for s in series] == [3]
    with pytest.raises(ValueError):
        derived_series(L, Subspace([{0: ONE}, {1: ONE}]))


def test_levi_setup_detects_wrong_triple():
    fam = build_family(1)
    L = fam.alg.leibniz()
    assert check_levi_setup(L, fam.f, fam.e, fam.h)


coeffs = st.lists(st.integers(-2, 2), min_size=7, max_size=7)


@given(coeffs, coeffs, coeffs)
def test_leibniz_identity_on_random_elements(x, y, z):
    L = build_family(2).alg.leibniz()
    X, Y, Z = ({i: Rat(c) for i, c in enumerate(v) if c} for v in (x, y, z))
    lhs = L.br(X, L.br(Y, Z))
    rhs = axpy(L.br(L.br(X, Y), Z), 1, L.br(Y, L.br(X, Z)))
    assert not axpy(lhs, -1, rhs)


@given(coeffs)
def test_square_lies_in_leib(x):
    L = build_family(2).alg.leibniz()
    X = {i: Rat(c) for i, c in enumerate(x) if c}
    assert L.br(X, X) in leib_ideal(L)
