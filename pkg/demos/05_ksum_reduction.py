"""
k-sum as a neighborhood question
================================

Any k-sum input becomes a two-machine schedule whose improving swaps of
exactly k jobs are the zero-sum k-subsets. Fast k-swap search would therefore
give fast k-sum.
"""

from kswap import derandomized_search, gen_ksum_reduction, oracle_ksum

for numbers, k in (([1, 2, -3], 3), ([1, 2, 4], 2), ([7, -2, 9, -5, 3, -4, 11], 3)):
    ks = gen_ksum_reduction(numbers, k)
    res = derandomized_search(ks.instance, ks.schedule, (0, 1), k, k_min=k)
    print(f"S={numbers} k={k}: loads {ks.schedule.loads}, theta {ks.theta}")
    if res.found:
        idx = sorted(res.move.out_jobs | res.move.in_jobs)
        print("   improving swap ->", [ks.numbers[i] for i in idx])
    print("   brute force says", oracle_ksum(ks.numbers, k).exists)
