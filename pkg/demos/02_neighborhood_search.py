"""
Three ways to search a machine pair
===================================

Naive search lists every job set up to size k. The randomized search splits
the jobs in two, tabulates half-size sums on each side and matches them by
binary search. The derandomized search replaces the random split with a
fixed family of splits that is guaranteed to catch every k-set.
"""

import time

import numpy as np

from kswap import derandomized_search, gen_uniform, lpt_schedule, naive_search, randomized_search

inst = gen_uniform(120, 2, seed=3)
s = lpt_schedule(inst)
pair = (0, 1) if s.loads[0] >= s.loads[1] else (1, 0)
print("LPT loads", s.loads, "gap", abs(s.loads[0] - s.loads[1]))

for k in (2, 3, 4):
    t0 = time.perf_counter()
    naive = naive_search(inst, s, pair, k)
    t1 = time.perf_counter()
    rand = randomized_search(inst, s, pair, k, np.random.default_rng(0))
    t2 = time.perf_counter()
    print(f"k={k}: naive found={naive.found} ({1e3 * (t1 - t0):.1f} ms), "
          f"randomized found={rand.found} after {rand.repetitions} reps ({1e3 * (t2 - t1):.1f} ms)")

# derandomized search is exhaustive, so it is slow on big pairs; a small one
small = gen_uniform(14, 2, seed=5, hi=1000)
ss = lpt_schedule(small)
pair = (0, 1) if ss.loads[0] >= ss.loads[1] else (1, 0)
res = derandomized_search(small, ss, pair, 3)
print("derandomized on n=14:", res.found, res.move, "splits tried:", res.repetitions)
