"""Print graded dims of V_B, its e(-1)e quotient and the lattice oracle side by side."""
import argparse

from vabkit.algebroid import build_family
from vabkit.lattice import graded_dim_oracle
from vabkit.vertex_engine import Engine, graded_dims, square_word

ap = argparse.ArgumentParser()
ap.add_argument("--blocks", type=int, default=1)
ap.add_argument("-N", type=int, default=5)
ap.add_argument("-P", type=int, default=4)
args = ap.parse_args()

V = build_family(args.blocks).alg
vb = graded_dims(V, N=args.N, P=args.P)["dims"]
sq = square_word(Engine(V, N=args.N, P=args.P), {"e": 1})
vbar = graded_dims(V, N=args.N, P=args.P, extra=[sq])["dims"]
print("n\tV_B\tquotient\tV_L+V_L+a/2")
for n in range(args.N + 1):
    oracle = graded_dim_oracle("L", n) + graded_dim_oracle("Lhalf", n)
    print(f"{n}\t{vb[n]}\t{vbar[n]}\t{oracle}")
