import pytest

from vabkit.algebroid import build_family
from vabkit.qlinalg import axpy
from vabkit.quotients import (NILPOTENT, c2_analysis, c2_bound, ebar_ideal_check, nilpotency_report,
                              witness)
from vabkit.vertex_engine import Engine, graded_dims, relation_seeds, square_word


@pytest.mark.parametrize("l", [1, 2])
def test_ebar_ideal_misses_low_degrees(l):
    r = ebar_ideal_check(l, N=4, P=4)
    assert r.ok
    assert r.dims_vb == r.dims_vbar == [2 * l + 1, 2 * l + 3]


def test_negative_control_h_square():
    # h(-1)h(-1)1 generates everything: the low slices collapse
    r = ebar_ideal_check(1, N=4, P=4, square={"h": 1})
    assert not r.ok
    assert r.ideal_slice_dims == [3, 5]


def test_vbar_dims_level_one():
    V = build_family(1).alg
    E = Engine(V, N=4, P=4)
    r = graded_dims(V, N=4, P=4, extra=[square_word(E, {"e": 1})])
    assert r["dims"] == [3, 5, 10, 15, 27]


def test_witness_orders_agree():
    E = Engine(build_family(1).alg, N=3, P=4)
    for co in NILPOTENT.values():
        w1, w2 = witness(E, co, "word"), witness(E, co, "mode")
        assert not axpy(dict(w1), -1, w2)


def test_nilpotency_in_quotient():
    r = nilpotency_report(1, N=3, P=4)
    assert r.ok and all(r.nilpotent.values()) and len(r.nilpotent) == 3


def test_squares_nonzero_before_quotient():
    E = Engine(build_family(1).alg, N=3, P=4)
    b = E.saturate(relation_seeds(E), top=2)
    assert not E.member(b, witness(E, {"e": 1}))


def test_c2_bound_values():
    assert [c2_bound(l) for l in (1, 2, 3)] == [42, 44, 46]


def test_c2_codims_small_window():
    r = c2_analysis(1, N=4, P=4)
    assert r.c2_codims == [3, 3, 1, 0, 0]
    assert r.c2_total == 7 <= r.bound
    assert r.spanning_ok and r.d_in_c2 and r.ok
