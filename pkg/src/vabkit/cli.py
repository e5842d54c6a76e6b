"""Command-line front end.  Exit codes: 0 ok, 1 math violation, 2 input error, 3 instability."""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import presentation
from .acceptance import BatteryConfig, run_battery
from .algebroid import (build_family, check_1tca, check_comm_assoc, check_family_hypotheses,
                        check_vertex_algebroid, degenerate_sl2)
from .lattice import graded_dim_oracle
from .leibniz import check_leibniz
from .quotients import c2_analysis, ebar_ideal_check, nilpotency_report
from .rep_theory import irrep_module, l_module
from .vertex_engine import Engine, UnstableSaturation, graded_dims, square_word

OK, VIOLATION, INPUT_ERROR, UNSTABLE = 0, 1, 2, 3


class Report:
    """Ordered key/value report; tables are lists of (degree, dim) rows."""

    def __init__(self, command: str, **params):
        self.fields = {"command": command, "parameters": params}
        self.t0 = time.perf_counter()

    def __setitem__(self, key, value):
        self.fields[key] = value

    def render(self, fmt: str) -> str:
        self.fields["wall_time"] = round(time.perf_counter() - self.t0, 3)
        if fmt == "json":
            return json.dumps(self.fields, indent=2, default=str) + "\n"
        lines = []
        table = self.fields.get("table")
        for key, val in self.fields.items():
            if key != "table":
                lines.append(f"# {key}\t{json.dumps(val, default=str)}")
        if table is not None:
            lines.append("degree\tdim")
            lines.extend(f"{d}\t{v}" for d, v in table)
        return "\n".join(lines) + "\n"


def _emit(report: Report, args) -> None:
    text = report.render(args.format)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return presentation.loads(fh.read())
    if getattr(args, "affine", False):
        return degenerate_sl2()
    return build_family(args.blocks).alg


def cmd_check(args) -> int:
    V = _load(args)
    rep = Report("check", file=args.file)
    L = V.leibniz()
    suites = {
        "comm_assoc": check_comm_assoc(V.A),
        "1tca": check_1tca(V),
        "vertex_algebroid": check_vertex_algebroid(V),
        "leibniz": check_leibniz(L),
    }
    rep["violations"] = {k: [list(map(str, t)) for t in v] for k, v in suites.items()}
    hyp = check_family_hypotheses(V)
    rep["hypotheses"] = {"violations": hyp["violations"], "case": hyp["case"]}
    _emit(rep, args)
    return VIOLATION if any(suites.values()) else OK


def cmd_build_family(args) -> int:
    text = presentation.dumps(build_family(args.blocks).alg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_dims(args) -> int:
    V = _load(args)
    extra = []
    if args.ebar:
        extra.append(square_word(Engine(V, N=args.max_degree, P=args.fil_cap), {"e": 1}))
    rep = Report("dims", N=args.max_degree, P=args.fil_cap, ebar=args.ebar,
                 algebra=V.metadata.get("name", "?"))
    r = graded_dims(V, N=args.max_degree, P=args.fil_cap, extra=extra)
    rep["stability"] = f"P={args.fil_cap} and P={args.fil_cap + 1} agree"
    rep["escapes"] = r["escapes"]
    rep["table"] = list(enumerate(r["dims"]))
    _emit(rep, args)
    return OK


def _quotient_report(rep: Report, r) -> None:
    for key in ("dims_vb", "dims_vbar", "ideal_slice_dims", "nilpotent", "c2_codims", "c2_total",
                "bound", "spanning_ok", "d_in_c2", "escapes", "notes"):
        val = getattr(r, key)
        if val not in (None, [], {}):
            rep[key] = val
    rep["verdict"] = "pass" if r.ok else "fail"


def cmd_ideal(args) -> int:
    r = ebar_ideal_check(args.blocks, args.max_degree, args.fil_cap)
    rep = Report("ideal", l=args.blocks, N=args.max_degree, P=args.fil_cap)
    _quotient_report(rep, r)
    _emit(rep, args)
    return OK if r.ok else VIOLATION


def cmd_nilpotency(args) -> int:
    r = nilpotency_report(args.blocks, args.max_degree, args.fil_cap)
    rep = Report("nilpotency", l=args.blocks, N=args.max_degree, P=args.fil_cap)
    _quotient_report(rep, r)
    _emit(rep, args)
    return OK if r.ok else VIOLATION


def cmd_c2(args) -> int:
    rep = Report("c2", l=args.blocks, N=args.max_degree, P=args.fil_cap)
    if args.max_degree < 4:
        rep["note"] = f"insufficient window: N={args.max_degree}"
        _emit(rep, args)
        return OK
    r = c2_analysis(args.blocks, args.max_degree, args.fil_cap)
    _quotient_report(rep, r)
    rep["table"] = list(enumerate(r.c2_codims))
    _emit(rep, args)
    return OK if r.ok else VIOLATION


def cmd_module(args) -> int:
    V = build_family(args.blocks).alg
    G = l_module(V, irrep_module(V, args.irrep), N=args.max_degree, P=args.fil_cap, include_ebar=args.ebar)
    rep = Report("module", l=args.blocks, irrep=args.irrep, ebar=args.ebar, N=args.max_degree)
    rep["dims_induced"] = G.dims_mb
    rep["obstruction"] = G.obstruction
    rep["note"] = f"no proper graded submodule searched beyond n <= {args.max_degree}"
    rep["table"] = list(enumerate(G.dims))
    _emit(rep, args)
    return VIOLATION if G.obstruction else OK


def cmd_lattice(args) -> int:
    rep = Report("lattice", sector=args.sector, N=args.max_degree)
    if args.sector == "Lhalf":
        rep["grade_shift"] = "1/4"
    rep["table"] = [(n, graded_dim_oracle(args.sector, n)) for n in range(args.max_degree + 1)]
    _emit(rep, args)
    return OK


def cmd_affine(args) -> int:
    V = degenerate_sl2()
    E = Engine(V, N=args.max_degree, P=args.fil_cap)
    r = graded_dims(V, N=args.max_degree, P=args.fil_cap, extra=[square_word(E, {"e": 1})])
    oracle = [graded_dim_oracle("L", n) for n in range(args.max_degree + 1)]
    rep = Report("affine", N=args.max_degree, P=args.fil_cap)
    rep["oracle"] = oracle
    rep["match"] = r["dims"] == oracle
    rep["table"] = list(enumerate(r["dims"]))
    _emit(rep, args)
    return OK if r["dims"] == oracle else VIOLATION


def cmd_suite(args) -> int:
    cfg = BatteryConfig(N=args.max_degree, P=args.fil_cap)
    only = set(args.only) if args.only else None
    results = run_battery(cfg, only)
    for r in results:
        print(r.line(), flush=True)
    rep = Report("suite", N=args.max_degree, P=args.fil_cap)
    rep["results"] = {str(r.number): {"status": r.status, "detail": r.detail} for r in results}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.render(args.format))
    if any(r.status == "unstable" for r in results):
        return UNSTABLE
    return OK if all(r.passed for r in results) else VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vabkit", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, window=True):
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--out")
        if window:
            p.add_argument("--max-degree", type=int, default=6)
            p.add_argument("--fil-cap", type=int, default=4)

    p = sub.add_parser("check", help="run the axiom checkers on a presentation file")
    p.add_argument("file")
    common(p, window=False)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("build-family", help="write the presentation of the l-block family")
    p.add_argument("--blocks", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build_family)

    p = sub.add_parser("dims", help="graded dimensions of the vacuum quotient")
    p.add_argument("file", nargs="?")
    p.add_argument("--blocks", type=int, default=1)
    p.add_argument("--affine", action="store_true", help="use the level-one affine instance")
    p.add_argument("--ebar", action="store_true", help="also divide by e(-1)e(-1)1")
    common(p)
    p.set_defaults(fn=cmd_dims)

    for name, fn, hlp in (("ideal", cmd_ideal, "does the e(-1)e ideal meet degrees 0 and 1"),
                          ("nilpotency", cmd_nilpotency, "nilpotency witnesses"),
                          ("c2", cmd_c2, "C2 codimensions")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--blocks", type=int, default=1)
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("module", help="graded dims of L(V(m))")
    p.add_argument("--irrep", type=int, default=0)
    p.add_argument("--blocks", type=int, default=1)
    p.add_argument("--ebar", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_module)

    p = sub.add_parser("lattice", help="lattice graded-dimension oracle")
    p.add_argument("--sector", choices=("L", "Lhalf"), default="L")
    common(p)
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("affine", help="level-one affine dims against the oracle")
    common(p)
    p.set_defaults(fn=cmd_affine)

    p = sub.add_parser("suite", help="run the acceptance battery")
    p.add_argument("--level", default="desk", choices=("desk",))
    p.add_argument("--only", type=int, nargs="*")
    common(p)
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "max_degree", 0) < 0 or getattr(args, "fil_cap", 0) < 0:
        print("error: --max-degree and --fil-cap must be non-negative", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.fn(args)
    except (presentation.PresentationError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except UnstableSaturation as exc:
        print(f"unstable saturation: {exc}", file=sys.stderr)
        return UNSTABLE


if __name__ == "__main__":
    sys.exit(main())
