import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vabkit.lattice import (LatticeContext, alpha_mode, basis, bracket_match_check, degree,
                            exp_vertex_mode, graded_dim_oracle, heisenberg_check, l0, l0_check,
                            normal_square, sector, square_zero_check, vec, weight)
from vabkit.qlinalg import Rat, axpy
from vabkit.vertex_engine import CapBreach


def test_alpha_mode_examples():
    assert alpha_mode(0, vec((), 1)) == vec((), 1)
    assert alpha_mode(1, alpha_mode(-1, vec())) == {((), 0): Rat(2)}
    assert alpha_mode(2, vec()) == {}
    assert alpha_mode(0, vec()) == {}


def test_exp_on_e_alpha():
    for n in range(-2, 4):
        assert exp_vertex_mode(1, n, vec((), 2)) == {}
    assert exp_vertex_mode(1, -3, vec((), 2)) == vec((), 4)


def test_exp_on_vacuum_is_the_state():
    assert exp_vertex_mode(1, -1, vec()) == vec((), 2)
    assert exp_vertex_mode(-1, -1, vec()) == vec((), -2)
    assert exp_vertex_mode(1, -2, vec()) == vec((1,), 2)


def test_ef_on_vacuum_gives_identity():
    # e_1 f = 1 and e_0 f = alpha(-1) 1
    f = vec((), -2)
    assert exp_vertex_mode(1, 1, f) == vec()
    assert exp_vertex_mode(1, 0, f) == vec((1,), 0)


def test_oracle_values():
    assert [graded_dim_oracle("L", n) for n in range(6)] == [1, 3, 4, 7, 13, 19]
    assert [graded_dim_oracle("Lhalf", n) for n in range(6)] == [2, 2, 6, 8, 14, 20]
    assert graded_dim_oracle("L", -1) == 0
    with pytest.raises(ValueError):
        graded_dim_oracle("L2", 0)


@given(st.integers(0, 9), st.sampled_from(["L", "Lhalf"]))
def test_oracle_matches_enumeration(n, sec):
    states = basis(sec, n)
    assert len(states) == graded_dim_oracle(sec, n)
    assert all(degree(s) == n and sector(s[1]) == sec for s in states)


def test_weights():
    assert weight(((), 1)) == Rat(1, 4)
    assert weight(((1,), 2)) == 2
    assert l0(vec((), 1)) == {((), 1): Rat(1, 4)}
    assert l0(vec()) == {}
    assert l0_check(4) == []


def test_heisenberg():
    assert heisenberg_check(3, 3) == []


states = st.sampled_from(basis("L", 0) + basis("L", 1) + basis("L", 2) + basis("Lhalf", 1) + basis("Lhalf", 2))


@settings(max_examples=30)
@given(states, st.sampled_from([1, -1]), st.integers(-3, 3))
def test_exp_mode_shifts_weight_and_keeps_sector(s, sign, n):
    out = exp_vertex_mode(sign, n, {s: Rat(1)})
    for t in out:
        assert weight(t) == weight(s) - n
        assert sector(t[1]) == sector(s[1])
        assert t[1] == s[1] + 2 * sign


@settings(max_examples=30)
@given(states, st.integers(-3, 3))
def test_alpha_mode_shifts_weight(s, n):
    for t in alpha_mode(n, {s: Rat(1)}):
        assert weight(t) == weight(s) - n and t[1] == s[1]


def test_context_caps_degree():
    ctx = LatticeContext(N=1)
    with pytest.raises(CapBreach):
        ctx.exp_vertex_mode(1, -3, vec())
    assert ctx.escapes == 1
    with pytest.raises(ValueError):
        exp_vertex_mode(2, 0, vec())


def test_bracket_match():
    assert bracket_match_check(2, 2) == []


def test_square_zero_and_control():
    assert square_zero_check(3, 3) == []
    assert normal_square(1, 1, -4, vec((1,), 1)) == {}
    hits = [normal_square(1, -1, t, vec()) for t in range(-3, 3)]
    assert any(hits)


def test_ef_commutator_on_vacuum():
    # [e(1), f(-1)] = h(0) + id on the vacuum
    v = vec()
    lhs = exp_vertex_mode(1, 1, exp_vertex_mode(-1, -1, v))
    axpy(lhs, -1, exp_vertex_mode(-1, -1, exp_vertex_mode(1, 1, v)))
    assert lhs == v
