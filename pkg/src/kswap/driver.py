"""Iterative improvement to a k-swap optimal schedule."""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from kswap.core import Instance, InvalidInputError, Schedule, apply_move
from kswap.derand import derandomized_search
from kswap.neighborhood import SearchResult, naive_search, randomized_search

OperatorName = Literal["naive", "randomized", "derandomized"]
OPERATORS: tuple[str, ...] = ("naive", "randomized", "derandomized")


@dataclass(frozen=True)
class OperatorKind:
    """Which neighborhood search to run, and with what ``k``.

    ``retry_budget`` only applies to the randomized operator: the number of
    full randomized batches tried on a machine pair before it is declared
    exhausted. ``None`` means ``ceil(ln n)``.
    """

    name: OperatorName
    k_max: int
    retry_budget: int | None = None

    def __post_init__(self):
        if self.name not in OPERATORS:
            raise InvalidInputError(f"unknown operator {self.name!r}; choose from {OPERATORS}")
        if self.k_max < 1:
            raise InvalidInputError(f"k_max must be >= 1, got {self.k_max}")
        if self.retry_budget is not None and self.retry_budget < 1:
            raise InvalidInputError("retry_budget must be >= 1")


@dataclass(frozen=True)
class IterationRecord:
    src: int
    dst: int
    k: int
    gain: int
    delta_before: int
    delta_after: int
    makespan_before: int
    makespan_after: int
    critical_after: int
    phi_before: int
    phi_after: int


@dataclass
class RunStats:
    improving_iterations: int = 0
    operator_invocations: int = 0
    repetitions_used: int = 0
    wall_time: float = 0.0
    status: Literal["certified", "exhausted", "capped", "running"] = "running"
    log: list[IterationRecord] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        """True when no improving move of size <= k_max exists (deterministic operators only)."""
        return self.status == "certified"

    @property
    def avg_step_time(self) -> float:
        return self.wall_time / max(1, self.operator_invocations)


def lpt_schedule(instance: Instance) -> Schedule:
    """Longest processing time first.

    Jobs in non-increasing ``p`` (ties: lower id first) each go to the least
    loaded machine (ties: lower index).
    """
    order = sorted(range(instance.n), key=lambda j: (-instance.p[j], j))
    heap = [(0, i) for i in range(instance.m)]
    assignment = [0] * instance.n
    for j in order:
        load, i = heapq.heappop(heap)
        assignment[j] = i
        heapq.heappush(heap, (load + instance.p[j], i))
    return Schedule.from_assignment(instance, assignment)


def job_ranks(instance: Instance) -> list[int]:
    """1-based rank of each job in ascending ``p`` order, ties broken by job id."""
    ranks = [0] * instance.n
    for r, j in enumerate(sorted(range(instance.n), key=lambda j: (instance.p[j], j)), start=1):
        ranks[j] = r
    return ranks


def phi(instance: Instance, schedule: Schedule, machine: int,
        ranks: list[int] | None = None) -> int:
    if not 0 <= machine < instance.m:
        raise InvalidInputError(f"invalid machine {machine}")
    ranks = ranks if ranks is not None else job_ranks(instance)
    return sum(ranks[j] for j, i in enumerate(schedule.assignment) if i == machine)


def _search(operator: OperatorKind, instance: Instance, schedule: Schedule,
            pair: tuple[int, int], rng: np.random.Generator) -> SearchResult:
    if operator.name == "naive":
        return naive_search(instance, schedule, pair, operator.k_max)
    if operator.name == "derandomized":
        return derandomized_search(instance, schedule, pair, operator.k_max)
    budget = operator.retry_budget or max(1, math.ceil(math.log(instance.n)))
    total = SearchResult()
    for _ in range(budget):
        total.absorb(randomized_search(instance, schedule, pair, operator.k_max, rng))
        if total.found:
            break
    return total


def local_search(instance: Instance, operator: OperatorKind, seed=None,
                 iteration_cap: int | None = None, initial: Schedule | None = None,
                 record: bool = True) -> tuple[Schedule, RunStats]:
    """Improve from ``initial`` (default: LPT) until no machine pair yields a move.

    Each iteration visits the critical machines in index order and, for each,
    the non-critical machines by ascending load (ties by index); the first
    improving move found is applied. ``seed`` feeds the randomized operator.
    """
    if iteration_cap is not None and iteration_cap < 0:
        raise InvalidInputError("iteration_cap must be >= 0")
    schedule = initial.copy() if initial is not None else lpt_schedule(instance)
    rng = np.random.default_rng(seed)
    stats = RunStats()
    ranks = job_ranks(instance) if record else None

    while True:
        summary = schedule.summary()
        if summary.delta == 0:
            stats.status = "certified" if operator.name != "randomized" else "exhausted"
            break
        if iteration_cap is not None and stats.improving_iterations >= iteration_cap:
            stats.status = "capped"
            break
        loads = schedule.loads
        others = sorted((i for i in range(instance.m) if i not in summary.critical),
                        key=lambda i: (loads[i], i))
        move = None
        for src in sorted(summary.critical):
            for dst in others:
                start = time.perf_counter()
                result = _search(operator, instance, schedule, (src, dst), rng)
                stats.wall_time += time.perf_counter() - start
                stats.operator_invocations += 1
                stats.repetitions_used += result.repetitions
                if result.found:
                    move, k_used = result.move, result.k
                    break
            if move is not None:
                break
        if move is None:
            stats.status = "certified" if operator.name != "randomized" else "exhausted"
            break

        if record:
            phi_before = phi(instance, schedule, move.src, ranks)
        apply_move(schedule, move)
        stats.improving_iterations += 1
        if record:
            after = schedule.summary()
            stats.log.append(IterationRecord(
                src=move.src, dst=move.dst, k=k_used, gain=move.gain,
                delta_before=summary.delta, delta_after=after.delta,
                makespan_before=summary.l_max, makespan_after=after.l_max,
                critical_after=min(after.critical),
                phi_before=phi_before, phi_after=phi(instance, schedule, move.src, ranks),
            ))

    if instance.m == 2 and operator.k_max == 2 and operator.name != "randomized":
        assert stats.improving_iterations <= instance.n**4, stats.improving_iterations
    return schedule, stats
