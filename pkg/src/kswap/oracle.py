"""Brute-force references for testing.

Everything here is written with plain ``itertools`` enumeration over Python
integers and shares no code with the search modules. Enumeration sizes are
bounded by hard guards; oversize requests raise :class:`OracleRefused`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from kswap.core import Instance, Schedule, SwapMove

# Improving-move enumeration: at most sum_{t<=4} C(20, t) job sets per pair.
MAX_IMPROVING_SETS = sum(math.comb(20, t) for t in range(5))
MAX_KSUM_SUBSETS = 10**6
MAX_OPTIMUM_JOBS = 24


class OracleRefused(RuntimeError):
    """The requested enumeration exceeds a guard."""


@dataclass(frozen=True)
class OracleVerdict:
    exists: bool
    witness: SwapMove | tuple[int, ...] | None
    enumerated: int


def oracle_improving(instance: Instance, schedule: Schedule, k_max: int,
                     k_min: int = 1) -> OracleVerdict:
    """Is there an improving move with ``k_min <= |S'| + |S''| <= k_max``?

    Every pair ``(c, o)`` with ``c`` a critical machine and ``o`` any other
    machine is checked, by listing all job sets directly from the assignment.
    """
    n = instance.n
    sets = sum(math.comb(n, t) for t in range(k_max + 1))
    if sets > MAX_IMPROVING_SETS:
        raise OracleRefused(f"{sets} job sets exceed the oracle guard {MAX_IMPROVING_SETS}")
    p = instance.p
    loads = [0] * instance.m
    for j, i in enumerate(schedule.assignment):
        loads[i] += p[j]
    top = max(loads)
    enumerated = 0
    for c in range(instance.m):
        if loads[c] != top:
            continue
        for o in range(instance.m):
            if o == c:
                continue
            window = loads[c] - loads[o]
            on_c = [j for j in range(n) if schedule.assignment[j] == c]
            on_o = [j for j in range(n) if schedule.assignment[j] == o]
            for size in range(max(1, k_min), k_max + 1):
                for a in range(size + 1):
                    for out_set in combinations(on_c, a):
                        out_p = sum(p[j] for j in out_set)
                        for in_set in combinations(on_o, size - a):
                            enumerated += 1
                            gain = out_p - sum(p[j] for j in in_set)
                            if 0 < gain < window:
                                move = SwapMove(c, o, frozenset(out_set), frozenset(in_set), gain)
                                return OracleVerdict(True, move, enumerated)
    return OracleVerdict(False, None, enumerated)


def oracle_ksum(numbers: Sequence[int], k: int) -> OracleVerdict:
    """Do ``k`` elements at distinct indices of ``numbers`` sum to zero?"""
    count = math.comb(len(numbers), k)
    if count > MAX_KSUM_SUBSETS:
        raise OracleRefused(f"{count} subsets exceed the oracle guard {MAX_KSUM_SUBSETS}")
    enumerated = 0
    for idx in combinations(range(len(numbers)), k):
        enumerated += 1
        if sum(numbers[i] for i in idx) == 0:
            return OracleVerdict(True, idx, enumerated)
    return OracleVerdict(False, None, enumerated)


def oracle_optimum_two_machines(instance: Instance) -> int:
    """Exact optimal makespan on two machines by listing all subset sums."""
    if instance.m != 2:
        raise OracleRefused("the exact optimum is only available for m = 2")
    if instance.n > MAX_OPTIMUM_JOBS:
        raise OracleRefused(f"n={instance.n} exceeds the oracle guard {MAX_OPTIMUM_JOBS}")
    total = instance.total
    if total < 2**62:
        sums = np.zeros(1, dtype=np.int64)
        for pj in instance.p:
            sums = np.concatenate([sums, sums + pj])
        return int(np.maximum(sums, total - sums).min())
    reachable = {0}
    for pj in instance.p:
        reachable |= {s + pj for s in reachable}
    return min(max(s, total - s) for s in reachable)
