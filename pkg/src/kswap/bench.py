"""Benchmark harness: LPT start, local search per operator and k, one CSV row per run.

Timing columns wrap the operator calls only (instance generation, LPT and I/O
are excluded) and are machine dependent. Every other column is a deterministic
function of the master seed.
"""

from __future__ import annotations

import csv
import zlib
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from kswap.core import InvalidInputError
from kswap.driver import OperatorKind, local_search
from kswap.generators import CLASSES, gen_uniform


def subseed(seed: int, *names) -> int:
    """A 64-bit seed derived from ``seed`` and a path of names."""
    key = tuple(zlib.crc32(str(name).encode()) for name in names)
    return int(np.random.SeedSequence(seed, spawn_key=key).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class ClassSpec:
    label: str
    n: int
    m: int
    count: int
    max_k: int | None = None


def preset(label: str, count: int = 50) -> ClassSpec:
    try:
        n, m, max_k = CLASSES[label]
    except KeyError:
        raise InvalidInputError(f"unknown class {label!r}; choose from {sorted(CLASSES)}") from None
    return ClassSpec(label, n, m, count, max_k)


@dataclass
class BenchRow:
    cls: str
    instance: int
    n: int
    m: int
    k: int
    operator: str
    seed: int
    improving_iterations: int
    operator_invocations: int
    avg_step_time: float
    total_time: float
    final_makespan: int
    status: str


# CSV header names; timing columns are milliseconds.
COLUMNS = ("class", "instance", "n", "m", "k", "operator", "seed", "improving_iterations",
           "operator_invocations", "avg_step_time_ms", "total_time_ms", "final_makespan",
           "status")
DETERMINISTIC = ("class", "instance", "n", "m", "k", "operator", "seed",
                 "improving_iterations", "operator_invocations", "final_makespan", "status")


def run_bench(spec: ClassSpec, ks: Sequence[int], operators: Sequence[str], seed: int,
              max_iters: int | None = None) -> list[BenchRow]:
    """Rows ordered by (instance, k, operator) as given."""
    for k in ks:
        if k < 1 or k > spec.n:
            raise InvalidInputError(f"k={k} outside [1, n={spec.n}]")
        if spec.max_k is not None and k > spec.max_k:
            raise InvalidInputError(f"k={k} exceeds the cap {spec.max_k} of class {spec.label}")
    rows = []
    for idx in range(spec.count):
        instance = gen_uniform(spec.n, spec.m, subseed(seed, "instance", spec.label, idx))
        for k in ks:
            for op in operators:
                run_seed = subseed(seed, "search", spec.label, idx, k, op)
                schedule, stats = local_search(instance, OperatorKind(op, k), seed=run_seed,
                                               iteration_cap=max_iters, record=False)
                rows.append(BenchRow(
                    spec.label, idx, spec.n, spec.m, k, op, seed,
                    stats.improving_iterations, stats.operator_invocations,
                    stats.avg_step_time * 1e3, stats.wall_time * 1e3,
                    schedule.makespan, stats.status,
                ))
    return rows


def write_csv(rows: Iterable[BenchRow], target) -> None:
    """Write rows to a path or an open text stream."""
    if hasattr(target, "write"):
        _write_rows(rows, target)
        return
    with open(target, "w", newline="", encoding="utf-8") as fh:
        _write_rows(rows, fh)


def _write_rows(rows: Iterable[BenchRow], fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(COLUMNS)
    for row in rows:
        values = [getattr(row, f.name) for f in fields(BenchRow)]
        values[9] = f"{row.avg_step_time:.6f}"
        values[10] = f"{row.total_time:.6f}"
        writer.writerow(values)


def read_csv(path) -> list[BenchRow]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != COLUMNS:
            raise InvalidInputError(f"unexpected CSV header {reader.fieldnames}")
        for rec in reader:
            rows.append(BenchRow(
                rec["class"], int(rec["instance"]), int(rec["n"]), int(rec["m"]), int(rec["k"]),
                rec["operator"], int(rec["seed"]), int(rec["improving_iterations"]),
                int(rec["operator_invocations"]), float(rec["avg_step_time_ms"]),
                float(rec["total_time_ms"]), int(rec["final_makespan"]), rec["status"],
            ))
    return rows


def deterministic_view(rows: Iterable[BenchRow]) -> list[tuple]:
    """The machine-independent columns of each row."""
    out = []
    for row in rows:
        d = asdict(row)
        d["class"] = d.pop("cls")
        out.append(tuple(d[c] for c in DETERMINISTIC))
    return out
