from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vabkit.algebroid import build_family, degenerate_sl2
from vabkit.qlinalg import Rat, axpy, scale
from vabkit.vertex_engine import (CapBreach, Engine, UnstableSaturation, colored_monomials, graded_dims,
                                  relation_seeds, square_word, state_degrees, word_state)
from vabkit.lattice import p as npart

V1 = build_family(1).alg
E = Engine(V1, N=4, P=4)
B = {name: ("B", V1.B_names.index(name)) for name in V1.B_names}
ONE = Rat(1)


def ws(*names):
    return word_state(E, [(n, -1) for n in names])


def mono(*factors, base=0):
    return {(tuple(factors), base): ONE}


def test_basic_mode_actions():
    f = ws("f")
    assert E.apply_mode(B["e"], 0, f) == mono((1, 2))         # e_0 f = h
    assert E.apply_mode(B["e"], 1, f) == E.vacuum              # e_1 f = <e, f> = 1
    assert E.apply_mode(B["h"], 0, ws("e", "e")) == scale(4, mono((1, 0), (1, 0)))
    assert E.apply_mode(B["e"], 2, f) == {}


def test_vacuum_modes():
    for u in (ws("e"), ws("e", "e"), ws("f", "h")):
        assert E.composite_mode(u, -1, E.vacuum) == u
        assert E.composite_mode(u, -2, E.vacuum) == E.d_operator(u)
        for n in range(0, 4):
            assert E.composite_mode(u, n, E.vacuum) == {}


def test_composite_examples():
    assert E.composite_mode(ws("e"), 1, ws("f")) == E.vacuum
    assert E.composite_mode(ws("e"), 0, ws("f")) == mono((1, 2))
    assert E.composite_mode(E.vacuum, -1, ws("f", "h")) == ws("f", "h")


def test_colored_monomial_count():
    # one color: partitions; three colors at degree 2: 3 + 6
    assert [len(colored_monomials(n, 1)) for n in range(7)] == [npart(n) for n in range(7)]
    assert len(colored_monomials(2, 3)) == 9


names = st.sampled_from(["e", "f", "h", "d1_0", "d1_1"])
modes = st.integers(-2, 2)


@settings(max_examples=30)
@given(names, modes, names, modes, st.lists(names, max_size=2))
def test_commutator_formula(x, m, y, n, state):
    s = ws(*state)
    if len(state) - min(m, n, m + n, 0) > E.N:
        return
    lhs = E.apply_mode(B[x], m, E.apply_mode(B[y], n, s))
    axpy(lhs, -1, E.apply_mode(B[y], n, E.apply_mode(B[x], m, s)))
    rhs = E.apply_elt(E.L.bracket(E.L.gen(*B[x], m), E.L.gen(*B[y], n)), s)
    assert not axpy(lhs, -1, rhs)


def test_commutator_check_clean():
    assert Engine(V1, N=5, P=4).commutator_check(2, 3) == []


@pytest.mark.parametrize("u", [("e",), ("f",), ("h", "e")])
@pytest.mark.parametrize("n", [-2, -1, 0, 1])
def test_d_translation(u, n):
    us = ws(*u)
    v = ws("f")
    lhs = E.composite_mode(E.d_operator(us), n, v)
    rhs = scale(-n, E.composite_mode(us, n - 1, v))
    assert not axpy(lhs, -1, rhs)


def test_skew_symmetry_mod_bundle():
    Es = Engine(V1, N=4, P=4)
    bundle = Es.saturate(relation_seeds(Es))
    pairs = [("e", "f"), ("h", "e"), ("f", "d1_0"), ("e", "e")]
    for a, b in pairs:
        u = word_state(Es, [(a, -1)])
        v = word_state(Es, [(b, -1)])
        lhs = Es.composite_mode(u, -1, v)
        axpy(lhs, -1, Es.composite_mode(v, -1, u))
        rhs = {}
        for j in range(1, 4):
            t = Es.composite_mode(v, j - 1, u)
            for _ in range(j):
                t = Es.d_operator(t)
            axpy(rhs, Rat((-1) ** j, factorial(j)), t)
        assert Es.member(bundle, axpy(lhs, -1, rhs)), (a, b)


def test_empty_seeds_give_zero_bundle():
    Es = Engine(V1, N=3, P=2)
    b = Es.saturate([])
    assert all(b.slice(n).dim == 0 for n in range(4))


def test_bundle_is_closed():
    Es = Engine(V1, N=3, P=4)
    b = Es.saturate(relation_seeds(Es))
    assert Es.verify_closed(b, 2) == []


def test_membership_examples():
    Es = Engine(V1, N=3, P=4)
    b = Es.saturate(relation_seeds(Es, [square_word(Es, {"e": 1})]))
    assert Es.member(b, word_state(Es, [("e", -1), ("e", -1)]))
    assert not Es.member(b, word_state(Es, [("e", -1)]))
    assert not Es.member(b, Es.vacuum)
    # a(-1) 1 - a as states: the identity relation holds
    one_minus = word_state(Es, [("id", -1)])
    assert Es.member(b, axpy(one_minus, -1, Es.vacuum))


def test_vb_dims_level_one():
    assert graded_dims(V1, N=4, P=4)["dims"] == [3, 5, 15, 30, 65]


def test_affine_needs_the_square():
    A = degenerate_sl2()
    plain = graded_dims(A, N=2, P=2)["dims"]
    Ea = Engine(A, N=2, P=2)
    cut = graded_dims(A, N=2, P=2, extra=[square_word(Ea, {"e": 1})])["dims"]
    assert cut == [1, 3, 4]
    assert plain[2] > 4


def test_uncapped_engine_raises():
    Eu = Engine(V1, N=1, P=4, capped=False)
    with pytest.raises(CapBreach):
        Eu._checked(Eu.apply_elt, Eu.L.gen("B", 0, -1), word_state(Eu, [("f", -1)]))


def test_capped_engine_drops_escapes():
    Ec = Engine(V1, N=1, P=4)
    assert Ec.apply_mode(B["e"], -1, word_state(Ec, [("f", -1)])) == {}
    assert Ec.escapes > 0


def test_zero_fil_cap_is_unstable():
    with pytest.raises(UnstableSaturation):
        graded_dims(V1, N=2, P=0)


def test_negative_window_rejected():
    with pytest.raises(ValueError):
        Engine(V1, N=-1)


def test_word_mode_agrees_modulo_bundle():
    Es = Engine(V1, N=3, P=4)
    b = Es.saturate(relation_seeds(Es))
    words = [(("B", 0, -1),), (("B", 1, -1), ("B", 2, -1)), (("A", 1, -1), ("B", 0, -1))]
    targets = [word_state(Es, [("f", -1)]), word_state(Es, [("h", -1)])]
    for w in words:
        u = Es.apply_word(list(w), Es.vacuum)
        for t in targets:
            for m in range(-1, 3):
                diff = Es.word_mode(w, m, t)
                axpy(diff, -1, Es.composite_mode(u, m, t))
                assert Es.member(b, diff), (w, m)


@given(st.lists(names, min_size=1, max_size=3), st.integers(-1, 3))
def test_grading_shift(state, m):
    s = ws(*state)
    d = len(state)
    out = E.apply_mode(B["h"], m, s)
    for deg in state_degrees(out):
        assert deg == d - m
