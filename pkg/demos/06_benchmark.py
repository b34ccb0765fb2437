"""
A small benchmark
=================

The harness draws seeded instances, runs each operator for each k and writes
one CSV row per run. Only the two timing columns depend on the machine.
"""

import io

from kswap.bench import preset, run_bench, write_csv

rows = run_bench(preset("C1", count=2), ks=[2, 4, 6], operators=["randomized", "naive"], seed=1)
buf = io.StringIO()
write_csv(rows, buf)
print(buf.getvalue())

# table building costs more than listing pairs at small k; it pays off as k grows
for k in (2, 4, 6):
    step = {r.operator: r.avg_step_time for r in rows if r.k == k and r.instance == 0}
    print(f"k={k}: randomized/naive per-step time = {step['randomized'] / step['naive']:.3f}")
