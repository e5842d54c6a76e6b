"""The acceptance battery: ten numbered checks, each returning a CriterionResult."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from .algebroid import (build_family, check_1tca, check_comm_assoc, check_family_hypotheses,
                        check_vertex_algebroid)
from .lattice import (affine_l10_dims, basis, bracket_match_check, graded_dim_oracle, l0_check,
                      square_zero_check)
from .leibniz import check_leibniz, check_levi_setup, leib_ideal
from .loop_lie import LoopAlgebra, check_jacobi
from .quotients import c2_analysis, c2_bound, ebar_ideal_check, nilpotency_report
from .rep_theory import admissible_irreps, irrep_module, l_module, sl2_irrep, solve_a_action
from .vertex_engine import Engine, UnstableSaturation, graded_dims


@dataclass
class CriterionResult:
    number: int
    title: str
    status: str                 # "pass", "fail", "skip" or "unstable"
    detail: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "skip")

    def line(self) -> str:
        return f"criterion {self.number:2d} [{self.status.upper()}] {self.title}"


@dataclass
class BatteryConfig:
    N: int = 6
    P: int = 4
    levels: Tuple[int, ...] = (1, 2)


def c01_axioms(cfg: BatteryConfig):
    d = {}
    ok = True
    for l in (1, 2, 3):
        fam = build_family(l)
        V = fam.alg
        L = V.leibniz()
        counts = {
            "comm_assoc": len(check_comm_assoc(V.A)),
            "1tca": len(check_1tca(V)),
            "algebroid": len(check_vertex_algebroid(V)),
            "leibniz": len(check_leibniz(L)),
            "levi": len(check_levi_setup(L, fam.e, fam.f, fam.h)),
            "hypotheses": len(check_family_hypotheses(V)["violations"]),
        }
        leib = leib_ideal(L).dim
        d[f"l={l}"] = {**counts, "leib_dim": leib}
        ok &= not any(counts.values()) and leib == 2 * l
    return ok, d


def c02_degree_anchors(cfg: BatteryConfig):
    d = {}
    ok = True
    lo = max(cfg.P - 1, 0)
    for l in cfg.levels:
        r = graded_dims(build_family(l).alg, N=cfg.N, P=lo, top=min(1, cfg.N))
        d[f"l={l}"] = {"dims": r["dims"], "P_pair": [lo, lo + 1]}
        ok &= r["dims"] == [2 * l + 1, 2 * l + 3][:len(r["dims"])]
    return ok, d


def c03_ebar_ideal(cfg: BatteryConfig):
    d = {}
    ok = True
    for l in cfg.levels:
        r = ebar_ideal_check(l, cfg.N, cfg.P)
        d[f"l={l}"] = {"ideal_slice_dims": r.ideal_slice_dims, "dims": r.dims_vbar}
        ok &= r.ok
    return ok, d


def c04_nilpotency(cfg: BatteryConfig):
    if cfg.N < 2:
        return None, {"note": "insufficient window: degree 2 is needed"}
    r = nilpotency_report(1, cfg.N, cfg.P)
    return r.ok, dict(r.nilpotent)


def c05_c2(cfg: BatteryConfig):
    if cfg.N < 5:
        return None, {"note": f"insufficient window: N={cfg.N} < 5"}
    big = c2_analysis(1, cfg.N, cfg.P)
    small = c2_analysis(1, cfg.N - 1, cfg.P)
    d = {"codims": big.c2_codims, "total": big.c2_total, "bound": c2_bound(1),
         f"total_N{cfg.N - 1}": small.c2_total, "spanning": big.spanning_ok, "D_in_C2": big.d_in_c2}
    ok = big.ok and small.c2_total == big.c2_total
    return ok, d


def c06_lattice_oracle(cfg: BatteryConfig):
    want = {"L": [1, 3, 4, 7, 13, 19], "Lhalf": [2, 2, 6, 8, 14, 20]}
    d = {}
    ok = True
    for sec, vals in want.items():
        oracle = [graded_dim_oracle(sec, n) for n in range(6)]
        counted = [len(basis(sec, n)) for n in range(6)]
        d[sec] = oracle
        ok &= oracle == vals == counted
    bad = l0_check(4)
    d["l0_violations"] = len(bad)
    return ok and not bad, d


def c07_affine(cfg: BatteryConfig):
    dims = affine_l10_dims(5, cfg.P)
    oracle = [graded_dim_oracle("L", n) for n in range(6)]
    return dims == oracle, {"engine": dims, "oracle": oracle}


def c08_modules(cfg: BatteryConfig):
    V = build_family(1).alg
    triv = l_module(V, irrep_module(V, 0), N=5, P=cfg.P, include_ebar=True)
    half = l_module(V, irrep_module(V, 1), N=5, P=cfg.P, include_ebar=True)
    o_l = [graded_dim_oracle("L", n) for n in range(6)]
    o_h = [graded_dim_oracle("Lhalf", n) for n in range(6)]
    d = {"trivial": triv.dims, "V(1)": half.dims, "oracle_L": o_l, "oracle_Lhalf": o_h}
    return triv.dims == o_l and half.dims == o_h, d


def c09_classification(cfg: BatteryConfig):
    d = {}
    ok = True
    for l in (1, 2):
        V = build_family(l).alg
        zero = [solve_a_action(V, sl2_irrep(m))["zero_space"] for m in range(5)]
        d[f"l={l}"] = zero
        ok &= all(zero)
    adm = admissible_irreps(3)
    d["admissible"] = adm
    return ok and adm == [0, 1], d


def c10_operator_identities(cfg: BatteryConfig):
    V = build_family(1).alg
    counts = {
        "commutator": len(Engine(V, N=max(cfg.N, 5), P=cfg.P).commutator_check(2, 3)),
        "jacobi": len(check_jacobi(LoopAlgebra(V), 3)),
        "bracket_match": len(bracket_match_check(3, 3)),
        "square_zero": len(square_zero_check(4)),
    }
    return not any(counts.values()), counts


CRITERIA: List[Tuple[int, str, Callable]] = [
    (1, "axiom battery for l = 1, 2, 3", c01_axioms),
    (2, "degree 0 and 1 anchors with P-stability", c02_degree_anchors),
    (3, "e(-1)e ideal misses degrees 0 and 1", c03_ebar_ideal),
    (4, "nilpotency identities in the quotient", c04_nilpotency),
    (5, "C2 codimension at truncation", c05_c2),
    (6, "lattice graded-dimension oracle and L(0)", c06_lattice_oracle),
    (7, "affine level-one dims match the oracle", c07_affine),
    (8, "simple modules match lattice sectors", c08_modules),
    (9, "classification mechanism", c09_classification),
    (10, "operator identity suites", c10_operator_identities),
]


def run_criterion(number: int, cfg: BatteryConfig = None) -> CriterionResult:
    cfg = cfg or BatteryConfig()
    num, title, fn = next(c for c in CRITERIA if c[0] == number)
    t = time.perf_counter()
    try:
        ok, detail = fn(cfg)
        status = "skip" if ok is None else ("pass" if ok else "fail")
    except UnstableSaturation as exc:
        status, detail = "unstable", {"error": str(exc)}
    return CriterionResult(num, title, status, detail, time.perf_counter() - t)


def run_battery(cfg: BatteryConfig = None, only=None) -> List[CriterionResult]:
    cfg = cfg or BatteryConfig()
    return [run_criterion(n, cfg) for n, _, _ in CRITERIA if only is None or n in only]
