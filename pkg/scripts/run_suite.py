"""Run the acceptance battery and print one line per criterion with timings."""
import sys

from vabkit.acceptance import BatteryConfig, run_battery

cfg = BatteryConfig(N=int(sys.argv[1]) if len(sys.argv) > 1 else 6)
results = run_battery(cfg)
for r in results:
    print(f"{r.line():70s} {r.seconds:6.1f}s")
    for k, v in r.detail.items():
        print(f"    {k}: {v}")
sys.exit(0 if all(r.passed for r in results) else 1)
