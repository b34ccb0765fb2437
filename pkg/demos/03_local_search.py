"""
Local search from LPT
=====================

Starting from the longest-processing-time schedule, keep applying the first
improving move until none is left. Larger k means a bigger neighborhood and
usually a better local optimum.
"""

from kswap import OperatorKind, gen_uniform, local_search, lpt_schedule

inst = gen_uniform(50, 5, seed=11)
print("LPT makespan", lpt_schedule(inst).makespan, "lower bound", -(-inst.total // inst.m))

for k in (1, 2, 3, 4):
    for op in ("naive", "randomized"):
        s, stats = local_search(inst, OperatorKind(op, k), seed=0)
        print(f"k={k} {op:10s} makespan {s.makespan}  iterations {stats.improving_iterations:3d}"
              f"  {1e3 * stats.avg_step_time:7.2f} ms/step  {stats.status}")

# the per-iteration log tracks the gap and the potential of the source machine
s, stats = local_search(inst, OperatorKind("naive", 2))
for rec in stats.log[:5]:
    print(rec)
