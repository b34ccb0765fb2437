"""Searching the k-swap neighborhood of a machine pair.

Two searches are provided:

* :func:`naive_search` enumerates every pair of job sets ``(S', S'')`` with
  ``|S'| + |S''| <= k`` and returns the first improving one.
* :func:`randomized_search` runs the meet-in-the-middle operator
  :func:`mim_single_run` under random bipartitions of the pair's jobs.
  Subsets of size ``ceil(k/2)`` from one side and ``floor(k/2)`` from the other
  are summed, one table is sorted, and each value of the other table is matched
  by binary search. A returned move is always improving; failing to return one
  is only probabilistic evidence that none exists.

Signed values: a job on the source machine contributes ``+p_j``, a job on the
destination machine ``-p_j``. A move is improving iff its signed total lies in
the open window ``(0, L_src - L_dst)``.

Subset tables are built with numpy in colexicographic order (subsets ordered
by their largest element, then the next largest, ...). Values that may not fit
``int64`` fall back to ``object`` arrays of Python integers, so results stay
exact for processing times up to ``2**126``.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from kswap.core import (
    Instance,
    InvalidInputError,
    Schedule,
    SwapMove,
    gain_is_improving,
)

INT64_SAFE = 2**62
# Upper bound on elements materialized per block by the naive scan.
NAIVE_BLOCK = 1 << 22


@dataclass(frozen=True)
class SumEntry:
    value: int
    jobs: frozenset[int]


@dataclass(frozen=True)
class Partition:
    a_side: frozenset[int]
    b_side: frozenset[int]

    @classmethod
    def from_sides(cls, a_side: Iterable[int], b_side: Iterable[int]) -> Partition:
        a, b = frozenset(a_side), frozenset(b_side)
        if a & b:
            raise InvalidInputError("partition sides overlap")
        return cls(a, b)


@dataclass
class SearchResult:
    """Outcome of a neighborhood search.

    ``move`` is ``None`` when nothing was found. ``subsets_enumerated`` counts
    table entries built (meet-in-the-middle) or candidate pairs examined
    (naive); ``repetitions`` counts single meet-in-the-middle runs.
    """

    move: SwapMove | None = None
    subsets_enumerated: int = 0
    repetitions: int = 0
    k: int | None = None

    @property
    def found(self) -> bool:
        return self.move is not None

    def absorb(self, other: SearchResult) -> None:
        self.subsets_enumerated += other.subsets_enumerated
        self.repetitions += other.repetitions
        if other.move is not None:
            self.move = other.move
            self.k = other.k


# ---------------------------------------------------------------------------
# subset tables


def as_array(values: Sequence[int]) -> np.ndarray:
    """Pack integers as ``int64`` when every subset sum fits, else as Python ints."""
    if sum(abs(v) for v in values) < INT64_SAFE:
        return np.asarray(values, dtype=np.int64).reshape(-1)
    return np.array(list(values), dtype=object).reshape(-1)


def subset_sums(values: np.ndarray, r: int) -> np.ndarray:
    """Sums of all ``r``-subsets of ``values`` in colex order.

    Entry ``i`` is the sum of the subset whose colex rank is ``i``; use
    :func:`unrank_colex` to recover its positions.
    """
    s = len(values)
    if r < 0 or r > s:
        return values[:0].copy()
    level = np.zeros(1, dtype=values.dtype)
    for t in range(1, r + 1):
        # colex: the (t-1)-subsets of values[:i] are a prefix of length C(i, t-1)
        level = np.concatenate(
            [level[: math.comb(i, t - 1)] + values[i] for i in range(t - 1, s - (r - t))]
        )
    return level


def unrank_colex(rank: int, r: int) -> list[int]:
    """Positions (ascending) of the ``r``-subset with colex rank ``rank``."""
    positions = []
    for t in range(r, 0, -1):
        c = t - 1
        while math.comb(c + 1, t) <= rank:
            c += 1
        positions.append(c)
        rank -= math.comb(c, t)
    return positions[::-1]


def _pair_of(schedule: Schedule, pair: tuple[int, int]) -> tuple[int, int]:
    src, dst = pair
    m = schedule.instance.m
    if not (0 <= src < m and 0 <= dst < m) or src == dst:
        raise InvalidInputError(f"invalid machine pair {pair!r}")
    return src, dst


def _signed(instance: Instance, schedule: Schedule, src: int, dst: int, j: int) -> int:
    machine = schedule.assignment[j]
    if machine == src:
        return instance.p[j]
    if machine == dst:
        return -instance.p[j]
    raise InvalidInputError(f"job {j} is on machine {machine}, outside pair ({src}, {dst})")


def signed_sum(instance: Instance, schedule: Schedule, pair: tuple[int, int],
               jobs: Iterable[int]) -> int:
    """Sum of ``p_j`` over jobs on the source minus the sum over jobs on the destination."""
    src, dst = _pair_of(schedule, pair)
    return sum(_signed(instance, schedule, src, dst, j) for j in jobs)


def build_sum_table(instance: Instance, schedule: Schedule, pair: tuple[int, int],
                    side_jobs: Iterable[int], subset_size: int) -> list[SumEntry]:
    """One :class:`SumEntry` per ``subset_size``-subset of ``side_jobs``, colex order.

    An oversize request yields an empty table.
    """
    src, dst = _pair_of(schedule, pair)
    side = sorted(side_jobs)
    if subset_size < 0:
        raise InvalidInputError("subset_size must be non-negative")
    values = as_array([_signed(instance, schedule, src, dst, j) for j in side])
    sums = subset_sums(values, subset_size)
    return [
        SumEntry(int(v), frozenset(side[pos] for pos in unrank_colex(rank, subset_size)))
        for rank, v in enumerate(sums)
    ]


def window_query(sorted_entries: Sequence[SumEntry], x: int, delta: int) -> SumEntry | None:
    """An entry with value strictly inside ``(-x, delta - x)``, or ``None``.

    ``sorted_entries`` must be non-decreasing by value. The smallest qualifying
    value is returned.
    """
    lo = bisect_right(sorted_entries, -x, key=lambda e: e.value)
    if lo < len(sorted_entries) and sorted_entries[lo].value < delta - x:
        return sorted_entries[lo]
    return None


def _first_window_hit(a_vals: np.ndarray, b_sorted: np.ndarray,
                      delta: int) -> tuple[int, int] | None:
    """First ``i`` (in ``a_vals`` order) with some ``b`` in ``(-a_i, delta - a_i)``.

    Returns ``(i, position in b_sorted)`` of the smallest matching ``b``.
    """
    if len(a_vals) == 0 or len(b_sorted) == 0:
        return None
    lo = np.searchsorted(b_sorted, -a_vals, side="right")
    hi = np.searchsorted(b_sorted, delta - a_vals, side="left")
    hits = np.flatnonzero(lo < hi)
    if len(hits) == 0:
        return None
    i = int(hits[0])
    return i, int(lo[i])


# ---------------------------------------------------------------------------
# meet in the middle


def _assemble(instance: Instance, schedule: Schedule, src: int, dst: int,
              jobs: Iterable[int]) -> SwapMove:
    jobs = list(jobs)
    out_jobs = [j for j in jobs if schedule.assignment[j] == src]
    in_jobs = [j for j in jobs if schedule.assignment[j] == dst]
    return SwapMove.build(instance, src, dst, out_jobs, in_jobs)


def mim_single_run(instance: Instance, schedule: Schedule, pair: tuple[int, int], k: int,
                   partition: Partition) -> SearchResult:
    """One meet-in-the-middle pass for exactly ``k`` jobs under a fixed bipartition.

    ``ceil(k/2)`` jobs are drawn from ``partition.a_side`` and ``floor(k/2)``
    from ``partition.b_side``. The result holds the first improving move found
    in colex order of the a-side subsets, or no move.
    """
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    src, dst = _pair_of(schedule, pair)
    result = SearchResult(repetitions=1)
    delta = schedule.loads[src] - schedule.loads[dst]
    if delta <= 0:
        return result

    a_jobs = sorted(partition.a_side)
    b_jobs = sorted(partition.b_side)
    ra, rb = (k + 1) // 2, k // 2
    if ra > len(a_jobs) or rb > len(b_jobs):
        return result

    signed = {j: _signed(instance, schedule, src, dst, j) for j in a_jobs + b_jobs}
    values = as_array([signed[j] for j in a_jobs + b_jobs])
    a_sums = subset_sums(values[: len(a_jobs)], ra)
    b_sums = subset_sums(values[len(a_jobs):], rb)
    result.subsets_enumerated = len(a_sums) + len(b_sums)

    order = np.argsort(b_sums, kind="stable")
    hit = _first_window_hit(a_sums, b_sums[order], delta)
    if hit is None:
        return result
    i, pos = hit
    jobs = [a_jobs[q] for q in unrank_colex(i, ra)]
    jobs += [b_jobs[q] for q in unrank_colex(int(order[pos]), rb)]
    move = _assemble(instance, schedule, src, dst, jobs)
    assert gain_is_improving(move.gain, schedule.loads[src], schedule.loads[dst]), move
    result.move = move
    result.k = k
    return result


def gamma(k: int) -> int:
    """Repetitions that push the failure probability of exact-``k`` runs below ``1/e``."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInputError(f"k must be a positive integer, got {k!r}")
    c = math.comb(k, (k + 1) // 2)
    return -(-(2**k) // c)


def pair_jobs(schedule: Schedule, pair: tuple[int, int]) -> list[int]:
    src, dst = pair
    return [j for j, i in enumerate(schedule.assignment) if i == src or i == dst]


def random_partition(jobs: Sequence[int], rng: np.random.Generator) -> Partition:
    bits = rng.integers(0, 2, size=len(jobs))
    a = frozenset(j for j, b in zip(jobs, bits) if b == 0)
    b = frozenset(j for j, b in zip(jobs, bits) if b == 1)
    return Partition(a, b)


def randomized_search(instance: Instance, schedule: Schedule, pair: tuple[int, int],
                      k_max: int, rng: np.random.Generator | int | None,
                      k_min: int = 1) -> SearchResult:
    """Randomized k-swap search on ``pair`` for ``k = k_min .. k_max``.

    For each ``k`` the exact-``k`` operator is repeated ``gamma(k)`` times,
    each with a fresh uniform bipartition drawn from ``rng``. Stops at the
    first improving move.
    """
    src, dst = _pair_of(schedule, pair)
    rng = np.random.default_rng(rng)
    total = SearchResult()
    if schedule.loads[src] - schedule.loads[dst] <= 0:
        return total
    jobs = pair_jobs(schedule, (src, dst))
    for k in range(k_min, k_max + 1):
        for _ in range(gamma(k)):
            run = mim_single_run(instance, schedule, (src, dst), k, random_partition(jobs, rng))
            total.absorb(run)
            if run.found:
                return total
    return total


# ---------------------------------------------------------------------------
# naive enumeration


def _first_in_window(outs: np.ndarray, ins: np.ndarray, delta: int) -> tuple[int | None, int]:
    """First ``(i, j)`` in row-major order with ``0 < outs[i] - ins[j] < delta``.

    Returns the flat index (or ``None``) and how many candidates were examined.
    """
    n_in = len(ins)
    rows = max(1, NAIVE_BLOCK // max(1, n_in))
    examined = 0
    fixed = outs.dtype != object
    if fixed:
        # 0 < d < delta  <=>  (d - 1) as unsigned < delta - 1
        shifted = ins + 1
        bound = np.uint64(delta - 1)
    for start in range(0, len(outs), rows):
        block = outs[start:start + rows]
        if fixed:
            mask = (block[:, None] - shifted[None, :]).view(np.uint64) < bound
        else:
            d = block[:, None] - ins[None, :]
            mask = ((d > 0) & (d < delta)).astype(bool)
        flat = mask.ravel()
        if flat.any():
            hit = int(np.argmax(flat))
            return start * n_in + hit, examined + hit + 1
        examined += flat.size
    return None, examined


def naive_search(instance: Instance, schedule: Schedule, pair: tuple[int, int],
                 k_max: int, k_min: int = 1) -> SearchResult:
    """Exhaustive k-swap search on ``pair``.

    Candidates are visited by total size ``t = k_min .. k_max``; within a size
    by number of outgoing jobs, largest first; then by colex rank of the
    outgoing set and finally of the incoming set. The first improving
    candidate is returned, so a ``None`` move certifies that no improving move
    of size ``k_min .. k_max`` exists on this pair.
    """
    src, dst = _pair_of(schedule, pair)
    result = SearchResult()
    delta = schedule.loads[src] - schedule.loads[dst]
    if delta <= 0:
        return result
    src_jobs = schedule.jobs_on(src)
    dst_jobs = schedule.jobs_on(dst)
    src_vals = as_array([instance.p[j] for j in src_jobs] + [instance.p[j] for j in dst_jobs])
    dst_vals = src_vals[len(src_jobs):]
    src_vals = src_vals[: len(src_jobs)]
    cache: dict[tuple[str, int], np.ndarray] = {}

    def sums(side: str, r: int) -> np.ndarray:
        if (side, r) not in cache:
            cache[(side, r)] = subset_sums(src_vals if side == "src" else dst_vals, r)
        return cache[(side, r)]

    for t in range(max(1, k_min), k_max + 1):
        for a in range(min(t, len(src_jobs)), -1, -1):
            b = t - a
            if b > len(dst_jobs):
                break
            outs, ins = sums("src", a), sums("dst", b)
            flat, examined = _first_in_window(outs, ins, delta)
            result.subsets_enumerated += examined
            if flat is None:
                continue
            i, j = divmod(flat, len(ins))
            move = SwapMove.build(
                instance, src, dst,
                [src_jobs[q] for q in unrank_colex(i, a)],
                [dst_jobs[q] for q in unrank_colex(j, b)],
            )
            assert gain_is_improving(move.gain, schedule.loads[src], schedule.loads[dst]), move
            result.move = move
            result.k = t
            return result
    return result
