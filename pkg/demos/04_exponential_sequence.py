"""
An exponentially long improving sequence
========================================

On a family of 3n+1 jobs, 3-swap local search can be steered through all
2^n states of a binary counter. Each move involves exactly three jobs and
lowers the makespan, yet there are at least 2^n - 1 of them.
"""

from kswap import adversarial_sequence, gen_lowerbound, iter_adversarial, omega

lb = gen_lowerbound(2)
print("processing times", lb.instance.p)
for move in adversarial_sequence(lb):
    print(f"out {sorted(move.out_jobs)} in {sorted(move.in_jobs)} gain {move.gain}")

for n in (4, 8, 12, 16):
    lb = gen_lowerbound(n)
    moves = 0
    states = set()  # the all-zero start is not yielded
    for _, schedule in iter_adversarial(lb):
        moves += 1
        state = omega(lb, schedule)
        if -1 not in state:  # mid-increment states are mixed
            states.add(state)
    print(f"n={n:2d}: {moves} improving 3-swaps, {len(states) + 1} counter values, 2^n - 1 = {2**n - 1}")
