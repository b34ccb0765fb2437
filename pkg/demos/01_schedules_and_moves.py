"""
Schedules, loads and swap moves
===============================

A schedule puts every job on one machine. A k-swap moves some jobs from a
source machine to a destination and some back. It is improving when the load
it shifts lies strictly between zero and the load gap of the pair.
"""

from kswap import Instance, Schedule, SwapMove, apply_move, is_improving

inst = Instance(2, [5, 4, 3, 2])
s = Schedule.from_assignment(inst, [0, 0, 1, 1])
print("loads", s.loads, "makespan", s.makespan)

# jumping the 4 closes the gap exactly, which does not lower the makespan
jump = SwapMove.build(inst, 0, 1, [1], [])
print("jump job 1:", jump.gain, is_improving(s, jump))

# trading 5 for 2 shifts 3 < 4
swap = SwapMove.build(inst, 0, 1, [0], [3])
print("swap 0<->3:", swap.gain, is_improving(s, swap))

apply_move(s, swap)
print("after swap", s.loads, "makespan", s.makespan)

# reversing a move restores the schedule
apply_move(s, swap.reversed())
print("undone", s.loads)
