"""Deterministic replacement for the random bipartition.

A splitter family maps job ids ``[0, n)`` into ``k**2`` buckets such that
every ``k``-subset of jobs lands in distinct buckets under at least one
member. A mapping schedule then colors the buckets 0/1 in ``k**2 + 1`` steps,
flipping one bucket at a time from a half-zero coloring to its complement.
For a ``k``-set of distinct buckets the number of zero-colored members moves
by at most one per step and ends at ``k`` minus its start, so some step
colors exactly ``ceil(k/2)`` of them with 0. Trying every (function, mapping)
combination therefore makes the meet-in-the-middle search complete.

The family used here is ``x -> (a*x mod q) mod k**2`` for ``a = 1 .. q-1``,
``q`` the smallest prime above ``n``. For a fixed ``k``-set the expected
number of colliding pairs over a uniformly random ``a`` is below
``C(k, 2) * 2 / k**2 < 1``, so some ``a`` is collision free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from kswap.core import Instance, InvalidInputError, Schedule
from kswap.neighborhood import (
    Partition,
    SearchResult,
    mim_single_run,
    pair_jobs,
)

# Keeps q * n inside exact small-int arithmetic and the family size sane.
MAX_SPLITTER_N = 10**7


def _is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    f = 3
    while f * f <= x:
        if x % f == 0:
            return False
        f += 2
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    q = n + 1
    while not _is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class SplitterFamily:
    """Hash functions ``[0, n) -> [0, k**2)``.

    ``multipliers`` is empty for the identity family (used when ``n <= k**2``);
    otherwise member ``a`` maps ``x`` to ``(a*x mod q) mod k**2``.
    """

    n: int
    k: int
    q: int | None
    multipliers: tuple[int, ...]

    @property
    def buckets(self) -> int:
        return self.k * self.k

    def __len__(self) -> int:
        return len(self.multipliers) if self.q is not None else 1

    def function(self, index: int) -> Callable[[int], int]:
        if self.q is None:
            if index != 0:
                raise IndexError(index)
            return lambda x: x
        a, q, b = self.multipliers[index], self.q, self.buckets
        return lambda x: (a * x) % q % b

    def table(self, index: int) -> list[int]:
        """Bucket of every id in ``[0, n)`` under member ``index``."""
        h = self.function(index)
        return [h(x) for x in range(self.n)]

    def tables(self):
        for index in range(len(self)):
            yield self.table(index)


def build_splitter(n: int, k: int) -> SplitterFamily:
    if n < 1 or k < 1:
        raise InvalidInputError(f"splitter needs n >= 1 and k >= 1, got n={n}, k={k}")
    if n > MAX_SPLITTER_N:
        raise InvalidInputError(f"n={n} exceeds the splitter limit {MAX_SPLITTER_N}")
    if n <= k * k:
        return SplitterFamily(n, k, None, ())
    q = next_prime(n)
    return SplitterFamily(n, k, q, tuple(range(1, q)))


@dataclass(frozen=True)
class MappingSchedule:
    k: int
    mappings: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.mappings)


def mapping_schedule(k: int) -> MappingSchedule:
    """0/1 colorings of ``k**2`` buckets, one flip per step.

    The first mapping colors the first ``ceil(k**2/2)`` buckets 0 and the rest 1.
    Steps alternate: the next bucket of the right block goes to 0, then the
    next bucket of the left block goes to 1. When one block is exhausted (odd
    ``k**2``) the other keeps flipping until the complement is reached.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    size = k * k
    half = -(-size // 2)
    current = [0] * half + [1] * (size - half)
    mappings = [tuple(current)]
    right = list(range(half, size))
    left = list(range(half))
    step = 2
    while right or left:
        if (step % 2 == 0 and right) or not left:
            current[right.pop(0)] = 0
        else:
            current[left.pop(0)] = 1
        mappings.append(tuple(current))
        step += 1
    return MappingSchedule(k, tuple(mappings))


def derandomized_search(instance: Instance, schedule: Schedule, pair: tuple[int, int],
                        k_max: int, k_min: int = 1) -> SearchResult:
    """Complete, deterministic meet-in-the-middle search on ``pair``.

    For each ``k`` from ``k_min`` to ``k_max``, every splitter member and every
    mapping defines a bipartition (buckets colored 0 form the a-side). The
    first improving move found is returned; no move means none of size
    ``k_min .. k_max`` exists on the pair.
    """
    src, dst = pair
    total = SearchResult()
    if schedule.loads[src] - schedule.loads[dst] <= 0:
        return total
    jobs = pair_jobs(schedule, pair)
    for k in range(max(1, k_min), k_max + 1):
        if k > len(jobs):
            break
        family = build_splitter(instance.n, k)
        colorings = mapping_schedule(k).mappings
        for table in family.tables():
            seen: set[frozenset[int]] = set()
            for coloring in colorings:
                a_side = frozenset(j for j in jobs if coloring[table[j]] == 0)
                # distinct colorings often induce the same split of the pair's jobs
                if a_side in seen:
                    continue
                seen.add(a_side)
                partition = Partition(a_side, frozenset(jobs) - a_side)
                run = mim_single_run(instance, schedule, pair, k, partition)
                total.absorb(run)
                if run.found:
                    return total
    return total
