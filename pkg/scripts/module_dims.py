"""Graded dims of L(V(m)) for small m, with and without the e(-1)e relation."""
from vabkit.algebroid import build_family
from vabkit.rep_theory import irrep_module, l_module

V = build_family(1).alg
for m in range(3):
    for ebar in (False, True):
        G = l_module(V, irrep_module(V, m), N=4, include_ebar=ebar)
        tag = "quotient" if ebar else "V_B     "
        print(f"m={m} {tag} M_B={G.dims_mb} L={G.dims} obstruction={G.obstruction}")
