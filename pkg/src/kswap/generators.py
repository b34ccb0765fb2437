"""Instance constructors.

* :func:`gen_uniform` draws the random benchmark classes (``CLASSES``).
* :func:`gen_lowerbound` builds the two-machine family on which 3-swap local
  search can take exponentially many improving steps, and
  :func:`adversarial_sequence` produces such a step sequence.
* :func:`gen_ksum_reduction` encodes a k-sum instance as a schedule whose
  improving exact-k swaps correspond to zero-sum k-subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from kswap.core import (
    MAX_PROCESSING_TIME,
    Instance,
    InvalidInputError,
    Schedule,
    SwapMove,
    apply_move,
    is_improving,
)

# label -> (n, m, max k)
CLASSES: dict[str, tuple[int, int, int]] = {
    "C1": (50, 2, 9),
    "C2": (100, 2, 6),
    "C3": (200, 2, 5),
    "C4": (50, 5, 9),
    "C5": (100, 5, 6),
    "C6": (200, 5, 5),
    "C7": (50, 10, 9),
    "C8": (100, 10, 6),
    "C9": (200, 10, 5),
}

MAX_LOWERBOUND_N = 60


def gen_uniform(n: int, m: int, seed: int | np.random.SeedSequence | None,
                lo: int = 1, hi: int = 10**9) -> Instance:
    """``n`` i.i.d. processing times, uniform on the integers ``[lo, hi]``."""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if not 1 <= lo <= hi:
        raise InvalidInputError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi >= 2**62 or n * hi >= MAX_PROCESSING_TIME:
        raise InvalidInputError(f"range [{lo}, {hi}] too large for {n} jobs")
    rng = np.random.default_rng(seed)
    p = rng.integers(lo, hi, size=n, endpoint=True)
    return Instance(m, (int(x) for x in p))


# ---------------------------------------------------------------------------
# exponential lower-bound family


@dataclass
class LowerBoundInstance:
    """The 3n+1 job family. ``roles[i]`` holds the ids of ``(a_i, b_i, c_i)``, 1-based ``i``."""

    n: int
    instance: Instance
    initial: Schedule
    roles: dict[int, tuple[int, int, int]]
    ell: int


class AdversaryError(RuntimeError):
    """A planned move of the adversarial sequence was not improving."""


def gen_lowerbound(n: int) -> LowerBoundInstance:
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_LOWERBOUND_N:
        raise InvalidInputError(f"n must be in [1, {MAX_LOWERBOUND_N}], got {n!r}")
    p: list[int] = []
    roles = {}
    for i in range(1, n + 1):
        roles[i] = (len(p), len(p) + 1, len(p) + 2)
        p += [
            2 ** (n + i + 1) + 2 ** (i - 1),
            2 ** (n + i),
            2 ** (n + i - 1) + 2 ** (i - 1),
        ]
    ell = len(p)
    # larger than all other jobs together, so machine 0 stays critical
    p.append(2 ** (2 * n + 4))
    instance = Instance(2, p)
    assignment = [0, 1, 1] * n + [0]
    return LowerBoundInstance(n, instance, Schedule.from_assignment(instance, assignment),
                              roles, ell)


def omega(lb: LowerBoundInstance, schedule: Schedule) -> tuple[int, ...]:
    """Per-triple state: 0 if ``a_i`` on machine 0 and ``b_i, c_i`` on 1, 1 if reversed, else -1."""
    state = []
    for i in range(1, lb.n + 1):
        a, b, c = (schedule.assignment[j] for j in lb.roles[i])
        if a == 0 and b == 1 and c == 1:
            state.append(0)
        elif a == 1 and b == 0 and c == 0:
            state.append(1)
        else:
            state.append(-1)
    return tuple(state)


def _increment_plan(lb: LowerBoundInstance, j: int) -> list[tuple[list[int], list[int]]]:
    """Moves turning ``omega = (1, .., 1, 0, *)`` (``j - 1`` leading ones) into ``(0, .., 0, 1, *)``."""
    a = {i: lb.roles[i][0] for i in lb.roles}
    b = {i: lb.roles[i][1] for i in lb.roles}
    c = {i: lb.roles[i][2] for i in lb.roles}
    if j == 1:
        return [([a[1]], [b[1], c[1]])]
    plan = [([a[j]], [a[j - 1], b[j]])]
    for i in range(j - 2, 0, -1):
        plan.append(([b[i], c[i + 1]], [a[i]]))
    plan.append(([b[j - 1], c[1]], [c[j]]))
    return plan


def iter_adversarial(lb: LowerBoundInstance) -> Iterator[tuple[SwapMove, Schedule]]:
    """Yield ``(move, schedule after move)`` along the binary-counter sequence.

    The yielded schedule is a single object mutated in place.

    Raises:
        AdversaryError: if a planned move is not improving or machine 0 stops
            being critical.
    """
    schedule = lb.initial.copy()
    state = [0] * lb.n
    while True:
        zeros = [i for i, w in enumerate(state) if w == 0]
        if not zeros:
            return
        j = zeros[0] + 1
        for out_jobs, in_jobs in _increment_plan(lb, j):
            move = SwapMove.build(lb.instance, 0, 1, out_jobs, in_jobs)
            if not is_improving(schedule, move):
                raise AdversaryError(f"planned move {move} is not improving at omega={state}")
            apply_move(schedule, move)
            if schedule.loads[0] <= schedule.loads[1]:
                raise AdversaryError("machine 0 is no longer critical")
            yield move, schedule
        state[: j - 1] = [0] * (j - 1)
        state[j - 1] = 1


def adversarial_sequence(lb: LowerBoundInstance) -> list[SwapMove]:
    return [move for move, _ in iter_adversarial(lb)]


# ---------------------------------------------------------------------------
# k-sum reduction


@dataclass
class KSumInstance:
    """A k-sum input encoded as a two-machine schedule.

    ``numbers`` is the input after the optional global negation that makes its
    sum non-negative; job ``j < len(numbers)`` encodes ``numbers[j]``.
    ``theta`` counts those number-jobs on machine 0.
    """

    numbers: tuple[int, ...]
    negated: bool
    k: int
    instance: Instance
    schedule: Schedule
    theta: int


def gen_ksum_reduction(numbers: Sequence[int], k: int) -> KSumInstance:
    numbers = [int(a) for a in numbers]
    if not numbers:
        raise InvalidInputError("need at least one number")
    if k < 1:
        raise InvalidInputError(f"k must be >= 1, got {k}")
    negated = sum(numbers) < 0
    if negated:
        numbers = [-a for a in numbers]
    n = len(numbers)
    abs_total = sum(abs(a) for a in numbers)
    big = 3 * n * abs_total

    p: list[int] = []
    assignment: list[int] = []
    for a in numbers:
        if a >= 0:
            p.append(n * a + 1)
            assignment.append(0)
        else:
            p.append(-n * a)
            assignment.append(1)
    theta = assignment.count(0)
    p += [big] * (k - 1) + [big + 1]
    assignment += [0] * k
    p.append(n * (sum(numbers) + 3 * k * abs_total))
    assignment.append(1)

    if sum(p) >= MAX_PROCESSING_TIME:
        raise InvalidInputError("numbers too large: machine loads would reach 2^126")
    instance = Instance(2, p)
    schedule = Schedule.from_assignment(instance, assignment)
    return KSumInstance(tuple(numbers), negated, k, instance, schedule, theta)
