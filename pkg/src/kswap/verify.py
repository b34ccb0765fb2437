"""Verification suites comparing the searches against brute force and theory.

Each suite returns a :class:`SuiteReport`. Counterexamples are stored as
plain dicts so they can be dumped as JSON.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from kswap.core import Instance, Schedule, SwapMove, gain_is_improving
from kswap.derand import build_splitter, derandomized_search, mapping_schedule
from kswap.driver import OperatorKind, local_search
from kswap.generators import (
    gen_ksum_reduction,
    gen_lowerbound,
    gen_uniform,
    iter_adversarial,
    omega,
)
from kswap.neighborhood import naive_search, randomized_search
from kswap.oracle import oracle_improving, oracle_ksum


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    soundness_violations: int = 0
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures and self.soundness_violations == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "soundness_violations": self.soundness_violations,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "details": self.details,
            "elapsed_s": round(self.elapsed, 3),
        }


def _sound(schedule: Schedule, move: SwapMove | None) -> bool:
    if move is None:
        return True
    return gain_is_improving(move.gain, schedule.loads[move.src], schedule.loads[move.dst])


def _critical_pair(schedule: Schedule) -> tuple[int, int]:
    src = 0 if schedule.loads[0] >= schedule.loads[1] else 1
    return src, 1 - src


def _random_case(rng: np.random.Generator, n_min: int, n_max: int,
                 lo: int = 1, hi: int = 100) -> tuple[Instance, Schedule]:
    n = int(rng.integers(n_min, n_max + 1))
    instance = Instance(2, (int(x) for x in rng.integers(lo, hi + 1, size=n)))
    assignment = [int(x) for x in rng.integers(0, 2, size=n)]
    return instance, Schedule.from_assignment(instance, assignment)


def oracle_equivalence(count: int = 500, seed: int = 0, n_max: int = 12,
                       k_values=(2, 3, 4)) -> SuiteReport:
    """Naive and derandomized search find a move iff brute force does.

    Odd cases start from a random assignment; even cases from a local optimum
    of a smaller neighborhood, so both outcomes are well represented.
    """
    report = SuiteReport("oracle-equivalence")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    found = 0
    for case in range(count):
        instance, schedule = _random_case(rng, 1, n_max)
        if case % 2 == 0:
            k_opt = int(rng.integers(1, max(k_values) + 1))
            schedule, _ = local_search(instance, OperatorKind("naive", k_opt),
                                       initial=schedule, record=False)
        pair = _critical_pair(schedule)
        for k in k_values:
            report.cases += 1
            truth = oracle_improving(instance, schedule, k).exists
            found += truth
            for name, search in (("naive", naive_search), ("derandomized", derandomized_search)):
                result = search(instance, schedule, pair, k)
                if not _sound(schedule, result.move):
                    report.soundness_violations += 1
                if result.found != truth:
                    report.failures.append({
                        "operator": name, "k": k, "p": list(instance.p),
                        "assignment": schedule.assignment, "oracle": truth,
                    })
    report.details = {"improvable_cases": found, "checked": report.cases}
    report.elapsed = time.perf_counter() - start
    return report


def randomized_success(cases: int = 300, seed: int = 0, n_range=(6, 12),
                       k_values=(2, 3, 4), threshold: float = 0.55) -> SuiteReport:
    """Success frequency of one gamma(k) batch when an improving exact-k swap exists.

    Half the schedules are local optima for sizes below k, where exact-k
    improvements are scarce.
    """
    report = SuiteReport("randomized-success")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    successes = 0
    per_k = {k: [0, 0] for k in k_values}
    while report.cases < cases:
        k = k_values[report.cases % len(k_values)]
        instance, schedule = _random_case(rng, *n_range)
        if rng.integers(0, 2) == 1 and k > 1:
            schedule, _ = local_search(instance, OperatorKind("naive", k - 1),
                                       initial=schedule, record=False)
        if not oracle_improving(instance, schedule, k, k_min=k).exists:
            continue
        result = randomized_search(instance, schedule, _critical_pair(schedule), k, rng, k_min=k)
        if not _sound(schedule, result.move):
            report.soundness_violations += 1
        report.cases += 1
        per_k[k][1] += 1
        if result.found:
            successes += 1
            per_k[k][0] += 1
    rate = successes / max(1, report.cases)
    report.details = {"rate": rate, "threshold": threshold,
                      "per_k": {k: v[0] / max(1, v[1]) for k, v in per_k.items()}}
    if rate < threshold:
        report.failures.append({"rate": rate, "threshold": threshold})
    report.elapsed = time.perf_counter() - start
    return report


def phi_descent(runs: int = 100, n: int = 50, seed: int = 0,
                extra_sizes=(100, 200)) -> SuiteReport:
    """Potential descent and the n^4 iteration ceiling for 2-swap naive search.

    Runs start from uniformly random assignments so that there is something to
    descend. ``extra_sizes`` adds one run per listed size for the ceiling check.
    """
    report = SuiteReport("phi-descent")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    sizes = [n] * runs + list(extra_sizes)
    iterations = []
    for idx, size in enumerate(sizes):
        instance = gen_uniform(size, 2, rng)
        initial = Schedule.from_assignment(instance, [int(x) for x in rng.integers(0, 2, size)])
        _, stats = local_search(instance, OperatorKind("naive", 2), initial=initial)
        report.cases += 1
        iterations.append(stats.improving_iterations)
        if stats.improving_iterations > size**4:
            report.failures.append({"run": idx, "n": size, "iterations": stats.improving_iterations})
        for it, rec in enumerate(stats.log):
            if rec.makespan_after >= rec.makespan_before:
                report.soundness_violations += 1
            if rec.critical_after == rec.src and not rec.phi_after < rec.phi_before:
                report.failures.append({"run": idx, "iteration": it,
                                        "phi_before": rec.phi_before, "phi_after": rec.phi_after})
    report.details = {"max_iterations": max(iterations, default=0),
                      "mean_iterations": float(np.mean(iterations)) if iterations else 0.0}
    report.elapsed = time.perf_counter() - start
    return report


def lowerbound(n_values=(2, 4, 8, 12)) -> SuiteReport:
    """Replay the adversarial 3-swap sequence and check its guarantees."""
    report = SuiteReport("lowerbound")
    start = time.perf_counter()
    counts = {}
    for n in n_values:
        t0 = time.perf_counter()
        lb = gen_lowerbound(n)
        moves = 0
        visited = {omega(lb, lb.initial)}
        for move, schedule in iter_adversarial(lb):
            moves += 1
            report.cases += 1
            if move.size != 3:
                report.failures.append({"n": n, "move": moves, "size": move.size})
            if schedule.loads[0] <= schedule.loads[1]:
                report.failures.append({"n": n, "move": moves, "error": "machine 0 not critical"})
            state = omega(lb, schedule)
            if -1 not in state:
                visited.add(state)
        counts[n] = {"moves": moves, "omega_states": len(visited),
                     "seconds": round(time.perf_counter() - t0, 3)}
        if moves < 2**n - 1 or len(visited) != 2**n:
            report.failures.append({"n": n, **counts[n]})
    report.details = counts
    report.elapsed = time.perf_counter() - start
    return report


def _planted_set(rng: np.random.Generator, k: int, size: int) -> list[int]:
    planted = [int(x) for x in rng.integers(-50, 51, size=k - 1)]
    planted.append(-sum(planted))
    rest = [int(x) for x in rng.integers(-50, 51, size=size - k)]
    numbers = planted + rest
    rng.shuffle(numbers)
    return numbers


def decode_ksum_move(ks, move: SwapMove) -> list[int] | None:
    """Indices into ``ks.numbers`` touched by ``move``, or None if a padding job moved."""
    jobs = sorted(move.out_jobs | move.in_jobs)
    if any(j >= len(ks.numbers) for j in jobs):
        return None
    return jobs


def ksum(planted: int = 100, negative: int = 100, seed: int = 0,
         k_values=(3, 4), max_size: int = 12) -> SuiteReport:
    """The reduction's schedule has an improving exact-k swap iff k numbers sum to zero."""
    report = SuiteReport("ksum")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    outcomes = {"planted_found": 0, "negative_clean": 0}
    for want_zero, total in ((True, planted), (False, negative)):
        done = 0
        while done < total:
            k = k_values[done % len(k_values)]
            size = int(rng.integers(k + 1, max_size + 1))
            if want_zero:
                numbers = _planted_set(rng, k, size)
            else:
                numbers = [int(x) for x in rng.integers(-50, 51, size=size)]
                if oracle_ksum(numbers, k).exists:
                    continue
            done += 1
            report.cases += 1
            ks = gen_ksum_reduction(numbers, k)
            if ks.schedule.loads[0] - ks.schedule.loads[1] != ks.theta + 1:
                report.failures.append({"numbers": numbers, "k": k, "error": "load identity"})
            result = derandomized_search(ks.instance, ks.schedule, (0, 1), k, k_min=k)
            if not _sound(ks.schedule, result.move):
                report.soundness_violations += 1
            if want_zero:
                idx = decode_ksum_move(ks, result.move) if result.found else None
                if idx is not None and len(idx) == k and sum(ks.numbers[i] for i in idx) == 0:
                    outcomes["planted_found"] += 1
                else:
                    report.failures.append({"numbers": numbers, "k": k, "found": result.found})
            elif result.found:
                report.failures.append({"numbers": numbers, "k": k, "move": str(result.move)})
            else:
                outcomes["negative_clean"] += 1
    report.details = outcomes
    report.elapsed = time.perf_counter() - start
    return report


def _covered(family, subsets: np.ndarray) -> np.ndarray:
    """For each row of ``subsets``, whether some family member is injective on it."""
    tables = np.array(list(family.tables()), dtype=np.int64)
    covered = np.zeros(len(subsets), dtype=bool)
    for table in tables:
        buckets = np.sort(table[subsets], axis=1)
        covered |= np.all(np.diff(buckets, axis=1) != 0, axis=1)
    return covered


def splitter(exhaustive_n: int = 20, exhaustive_k: int = 4, sampled_n: int = 200,
             sampled_k: int = 6, samples: int = 10_000, seed: int = 0) -> SuiteReport:
    """Splitter coverage plus the mapping schedule's structure."""
    report = SuiteReport("splitter")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    for n in range(1, exhaustive_n + 1):
        for k in range(1, min(exhaustive_k, n) + 1):
            subsets = np.array(list(combinations(range(n), k)), dtype=np.int64)
            ok = _covered(build_splitter(n, k), subsets)
            report.cases += len(subsets)
            for row in subsets[~ok][:5]:
                report.failures.append({"n": n, "k": k, "subset": row.tolist()})
    for k in range(1, sampled_k + 1):
        subsets = np.array([rng.choice(sampled_n, size=k, replace=False) for _ in range(samples)])
        ok = _covered(build_splitter(sampled_n, k), subsets)
        report.cases += samples
        for row in subsets[~ok][:5]:
            report.failures.append({"n": sampled_n, "k": k, "subset": sorted(row.tolist())})
    for k in range(1, sampled_k + 1):
        maps = np.array(mapping_schedule(k).mappings)
        half = -(-k * k // 2)
        first_ok = maps[0].tolist() == [0] * half + [1] * (k * k - half)
        steps_ok = bool(np.all(np.abs(np.diff(maps, axis=0)).sum(axis=1) == 1))
        if not (first_ok and steps_ok and np.array_equal(maps[-1], 1 - maps[0])):
            report.failures.append({"k": k, "error": "mapping schedule structure"})
        report.cases += 1
    report.elapsed = time.perf_counter() - start
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "oracle-equivalence": oracle_equivalence,
    "randomized-success": randomized_success,
    "phi-descent": phi_descent,
    "lowerbound": lowerbound,
    "ksum": ksum,
    "splitter": splitter,
}


def run_suite(name: str, **kwargs) -> SuiteReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}") from None
    return suite(**kwargs)

