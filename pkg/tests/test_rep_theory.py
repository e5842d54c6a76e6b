import pytest
from hypothesis import given
from hypothesis import strategies as st

from vabkit.algebroid import build_family
from vabkit.lattice import graded_dim_oracle
from vabkit.qlinalg import Rat
from vabkit.rep_theory import (admissible_irreps, check_lie_algebroid_module, irrep_module, j_closed,
                               l_module, probe_simple, sl2_irrep, solve_a_action, vbar_module_constraints)

V1 = build_family(1).alg


@given(st.integers(0, 8))
def test_sl2_irreps_satisfy_relations(m):
    U = sl2_irrep(m)
    assert U.dim == m + 1 and U.relations_hold()


def test_negative_highest_weight():
    with pytest.raises(ValueError):
        sl2_irrep(-1)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_irrep_modules_are_modules(m):
    assert check_lie_algebroid_module(V1, irrep_module(V1, m)) == []


def test_nonzero_a_action_is_rejected():
    U = irrep_module(V1, 1, a_override={1: [{0: Rat(1)}, {1: Rat(1)}]})
    tags = {b[0] for b in check_lie_algebroid_module(V1, U)}
    assert "assoc" in tags or "anchor" in tags


@pytest.mark.parametrize("l", [1, 2])
@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_only_the_zero_action(l, m):
    r = solve_a_action(build_family(l).alg, sl2_irrep(m))
    assert r["consistent"] and r["zero_space"]
    assert r["assoc_ok"]


def test_solver_finds_freedom_without_anchor():
    # positive control: with the anchor switched off nothing pins the A-action on V(0)
    V = build_family(1).alg
    for key in V.anchor:
        V.anchor[key] = {}
    r = solve_a_action(V, sl2_irrep(0))
    assert r["consistent"] and not r["zero_space"]
    assert len(r["kernel"]) == V.dimA - 1


def test_admissible_highest_weights():
    assert admissible_irreps(5) == [0, 1]
    assert vbar_module_constraints(sl2_irrep(1))
    assert not vbar_module_constraints(2)


@pytest.mark.parametrize("m,sector", [(0, "L"), (1, "Lhalf")])
def test_simple_module_dims(m, sector):
    G = l_module(V1, irrep_module(V1, m), N=4, include_ebar=True)
    assert G.obstruction is None
    assert G.dims == [graded_dim_oracle(sector, n) for n in range(5)]
    assert G.dims_mb[0] == m + 1


def test_maximal_submodule_is_closed_and_quotient_simple():
    G = l_module(V1, irrep_module(V1, 1), N=3)
    assert G.dims_mb == [2, 6, 18, 44]
    assert G.dims == [2, 2, 6, 8]
    assert j_closed(G) == []
    assert probe_simple(G, 2)


def test_vbar_obstruction_for_v2():
    G = l_module(V1, irrep_module(V1, 2), N=2, include_ebar=True)
    assert G.obstruction is not None and "degree 0" in G.obstruction


def test_induce_rejects_non_module():
    bad = irrep_module(V1, 1, a_override={1: [{0: Rat(1)}, {1: Rat(1)}]})
    with pytest.raises(ValueError):
        l_module(V1, bad, N=1)
