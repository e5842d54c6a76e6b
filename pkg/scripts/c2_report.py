"""C2 codimensions of the quotient at two windows, to see the total settle."""
import sys

from vabkit.quotients import c2_analysis

N = int(sys.argv[1]) if len(sys.argv) > 1 else 6
for n in (N - 1, N):
    r = c2_analysis(1, n, 4)
    print(f"N={n}  codims={r.c2_codims}  total={r.c2_total}  bound={r.bound}  "
          f"spanning={r.spanning_ok}  D_in_C2={r.d_in_c2}")
