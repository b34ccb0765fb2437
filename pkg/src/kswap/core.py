"""Instances, schedules and swap moves for makespan minimization.

A schedule assigns each of ``n`` jobs to one of ``m`` identical machines. The
load of a machine is the sum of the processing times of its jobs; the makespan
is the largest load. All arithmetic is on Python integers, so sums are exact.
Processing times are capped below ``2**126`` so that every quantity fits a
signed 128-bit word, which keeps results portable to fixed-width backends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

MAX_PROCESSING_TIME = 2**126


class InvalidInputError(ValueError):
    """Raised when an instance, schedule or move is malformed."""


@dataclass(frozen=True)
class Instance:
    """An immutable scheduling instance.

    Attributes:
        m: Number of machines (at least 2).
        p: Processing times, one non-negative integer per job.
    """

    m: int
    p: tuple[int, ...]

    def __init__(self, m: int, p: Iterable[int]):
        p = tuple(p)
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise InvalidInputError(f"machine count must be an integer >= 2, got {m!r}")
        if not p:
            raise InvalidInputError("an instance needs at least one job")
        for j, pj in enumerate(p):
            if isinstance(pj, bool) or not isinstance(pj, int):
                raise InvalidInputError(f"processing time of job {j} is not an integer: {pj!r}")
            if pj < 0 or pj >= MAX_PROCESSING_TIME:
                raise InvalidInputError(f"processing time of job {j} out of range [0, 2^126): {pj}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p", p)

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def total(self) -> int:
        return sum(self.p)


@dataclass(frozen=True)
class LoadSummary:
    l_max: int
    l_min: int
    delta: int
    critical: frozenset[int]


def _check_assignment(instance: Instance, assignment: Sequence[int]) -> None:
    if len(assignment) != instance.n:
        raise InvalidInputError(
            f"assignment has {len(assignment)} entries, instance has {instance.n} jobs"
        )
    for j, i in enumerate(assignment):
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < instance.m:
            raise InvalidInputError(f"job {j} assigned to invalid machine {i!r}")


def summarize(loads: Sequence[int]) -> LoadSummary:
    l_max = max(loads)
    l_min = min(loads)
    critical = frozenset(i for i, load in enumerate(loads) if load == l_max)
    return LoadSummary(l_max, l_min, l_max - l_min, critical)


def compute_loads(instance: Instance, assignment: Sequence[int]) -> tuple[LoadSummary, list[int]]:
    """Recompute machine loads from scratch.

    Raises:
        InvalidInputError: if the assignment length differs from ``n`` or a
            machine index lies outside ``[0, m)``.
    """
    _check_assignment(instance, assignment)
    loads = [0] * instance.m
    for j, i in enumerate(assignment):
        loads[i] += instance.p[j]
    return summarize(loads), loads


@dataclass
class Schedule:
    """A mutable job-to-machine assignment with cached loads.

    Use :meth:`from_assignment` to build one; the cached ``loads`` are kept
    consistent by :func:`apply_move`.
    """

    instance: Instance
    assignment: list[int]
    loads: list[int] = field(default_factory=list)

    @classmethod
    def from_assignment(cls, instance: Instance, assignment: Sequence[int]) -> Schedule:
        _, loads = compute_loads(instance, assignment)
        return cls(instance, list(assignment), loads)

    @property
    def makespan(self) -> int:
        return max(self.loads)

    def summary(self) -> LoadSummary:
        return summarize(self.loads)

    def jobs_on(self, machine: int) -> list[int]:
        """Job ids on ``machine`` in ascending order."""
        return [j for j, i in enumerate(self.assignment) if i == machine]

    def copy(self) -> Schedule:
        return Schedule(self.instance, list(self.assignment), list(self.loads))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Schedule):
            return NotImplemented
        return (
            self.instance == other.instance
            and self.assignment == other.assignment
            and self.loads == other.loads
        )


@dataclass(frozen=True)
class SwapMove:
    """Jobs ``out_jobs`` leave ``src`` for ``dst``; jobs ``in_jobs`` go the other way.

    ``gain`` is the load transferred from ``src`` to ``dst``.
    """

    src: int
    dst: int
    out_jobs: frozenset[int]
    in_jobs: frozenset[int]
    gain: int

    @classmethod
    def build(cls, instance: Instance, src: int, dst: int,
              out_jobs: Iterable[int], in_jobs: Iterable[int]) -> SwapMove:
        out_jobs = frozenset(out_jobs)
        in_jobs = frozenset(in_jobs)
        gain = sum(instance.p[j] for j in out_jobs) - sum(instance.p[j] for j in in_jobs)
        return cls(src, dst, out_jobs, in_jobs, gain)

    @property
    def size(self) -> int:
        return len(self.out_jobs) + len(self.in_jobs)

    def reversed(self) -> SwapMove:
        """The move that undoes this one once it has been applied."""
        return SwapMove(self.dst, self.src, self.out_jobs, self.in_jobs, self.gain)


def check_move(schedule: Schedule, move: SwapMove) -> None:
    """Raise :class:`InvalidInputError` unless ``move`` is well formed for ``schedule``."""
    inst = schedule.instance
    if not (0 <= move.src < inst.m and 0 <= move.dst < inst.m) or move.src == move.dst:
        raise InvalidInputError(f"invalid machine pair ({move.src}, {move.dst})")
    if not move.out_jobs and not move.in_jobs:
        raise InvalidInputError("a move must involve at least one job")
    if move.out_jobs & move.in_jobs:
        raise InvalidInputError("out_jobs and in_jobs overlap")
    for j in move.out_jobs:
        if not 0 <= j < inst.n or schedule.assignment[j] != move.src:
            raise InvalidInputError(f"job {j} is not on source machine {move.src}")
    for j in move.in_jobs:
        if not 0 <= j < inst.n or schedule.assignment[j] != move.dst:
            raise InvalidInputError(f"job {j} is not on destination machine {move.dst}")
    gain = sum(inst.p[j] for j in move.out_jobs) - sum(inst.p[j] for j in move.in_jobs)
    if gain != move.gain:
        raise InvalidInputError(f"move gain {move.gain} inconsistent with processing times ({gain})")


def gain_is_improving(gain: int, src_load: int, dst_load: int) -> bool:
    return 0 < gain < src_load - dst_load


def is_improving(schedule: Schedule, move: SwapMove) -> bool:
    """True iff ``0 < gain < L_src - L_dst``.

    Equivalently, the larger of the two loads strictly decreases once the move
    is applied. A pair with equal loads never admits an improving move.
    """
    check_move(schedule, move)
    return gain_is_improving(move.gain, schedule.loads[move.src], schedule.loads[move.dst])


def apply_move(schedule: Schedule, move: SwapMove) -> Schedule:
    """Apply ``move`` in place and return ``schedule``.

    The move is validated before anything is touched, so a rejected move
    leaves the schedule unchanged.
    """
    check_move(schedule, move)
    for j in move.out_jobs:
        schedule.assignment[j] = move.dst
    for j in move.in_jobs:
        schedule.assignment[j] = move.src
    schedule.loads[move.src] -= move.gain
    schedule.loads[move.dst] += move.gain
    return schedule
