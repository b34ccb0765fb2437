"""The eleven acceptance criteria, each at its stated tolerance.

Every test appends one PASS/FAIL line, printed in the terminal summary.
"""

import functools
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from kswap.bench import deterministic_view, preset, read_csv, run_bench
from kswap.cli import main
from kswap.core import Schedule, gain_is_improving
from kswap import driver
from kswap.driver import OperatorKind, local_search
from kswap.generators import gen_uniform
from kswap.neighborhood import gamma
from kswap.verify import ksum, lowerbound, oracle_equivalence, phi_descent, randomized_success, splitter


def record(number, title, passed, detail):
    ACCEPTANCE_LINES.append(f"AC{number:<2} {'PASS' if passed else 'FAIL'}  {title}: {detail}")
    assert passed, detail


@functools.cache
def suite(name):
    runners = {
        "equivalence": lambda: oracle_equivalence(count=500, seed=0, n_max=12, k_values=(2, 3, 4)),
        "randomized": lambda: randomized_success(cases=300, seed=0, threshold=0.55),
        "phi": lambda: phi_descent(runs=100, n=50, seed=0, extra_sizes=(100, 200)),
        "lowerbound": lambda: lowerbound((2, 4, 8, 12)),
        "ksum": lambda: ksum(planted=100, negative=100, seed=0, k_values=(3, 4)),
        "splitter": lambda: splitter(),
    }
    return runners[name]()


def test_ac01_oracle_equivalence():
    rep = suite("equivalence")
    ok = rep.cases == 1500 and not rep.failures and rep.elapsed < 120
    record(1, "oracle equivalence", ok,
           f"{rep.cases} checks, {len(rep.failures)} mismatches, {rep.elapsed:.1f}s")


def test_ac02_soundness(monkeypatch):
    violations = sum(suite(n).soundness_violations
                     for n in ("equivalence", "randomized", "phi", "ksum"))
    # every move the driver applies, checked against its pair just before it lands
    checked = 0
    real_apply = driver.apply_move

    def audited(schedule, move):
        nonlocal checked, violations
        checked += 1
        violations += not gain_is_improving(move.gain, schedule.loads[move.src],
                                            schedule.loads[move.dst])
        return real_apply(schedule, move)

    monkeypatch.setattr(driver, "apply_move", audited)
    rng = np.random.default_rng(2)
    for trial in range(12):
        m = 2 + trial % 3
        inst = gen_uniform(int(rng.integers(10, 40)), m, int(rng.integers(1 << 30)), hi=10**6)
        start = Schedule.from_assignment(inst, [int(x) for x in rng.integers(0, m, size=inst.n)])
        for op in ("naive", "randomized", "derandomized"):
            local_search(inst, OperatorKind(op, 3), seed=trial, initial=start, record=False)
    record(2, "soundness", violations == 0 and checked > 0,
           f"{violations} violations over suites plus {checked} driver moves")


def test_ac03_randomized_success_rate():
    rep = suite("randomized")
    rate = rep.details["rate"]
    record(3, "randomized success rate", rep.cases >= 300 and rate >= 0.55,
           f"{rate:.3f} over {rep.cases} cases (per k {rep.details['per_k']})")


def test_ac04_gamma():
    got = [gamma(k) for k in (2, 3, 4, 5)]
    record(4, "repetition counts", got == [2, 3, 3, 4], f"gamma(2..5) = {got}")


def test_ac05_phi_descent():
    rep = suite("phi")
    bad = [f for f in rep.failures if "phi_before" in f]
    record(5, "potential descent", not bad and rep.soundness_violations == 0,
           f"{len(bad)} violations over {rep.cases} runs")


def test_ac06_iteration_ceiling():
    rep = suite("phi")
    bad = [f for f in rep.failures if "iterations" in f]
    record(6, "n^4 iteration ceiling", not bad,
           f"max {rep.details['max_iterations']} iterations over n in {{50, 100, 200}}")


def test_ac07_lower_bound(capsys):
    rep = suite("lowerbound")
    times = {n: v["seconds"] for n, v in rep.details.items()}
    codes = [main(["lowerbound", "--n", str(n)]) for n in (2, 4, 8, 12)]
    capsys.readouterr()
    ok = rep.passed and all(t < 10 for t in times.values()) and codes == [0] * 4
    moves = {n: v["moves"] for n, v in rep.details.items()}
    record(7, "exponential 3-swap sequence", ok, f"moves {moves}, seconds {times}")


def test_ac08_ksum_reduction():
    rep = suite("ksum")
    d = rep.details
    ok = d["planted_found"] == 100 and d["negative_clean"] == 100 and rep.passed
    record(8, "k-sum reduction", ok,
           f"planted {d['planted_found']}/100 found, negatives {d['negative_clean']}/100 clean")


def test_ac09_splitter():
    rep = suite("splitter")
    record(9, "splitter and mapping schedule", rep.passed,
           f"{rep.cases} checks, {len(rep.failures)} uncovered or malformed")


@pytest.mark.slow
def test_ac10_timing_trend():
    start = time.perf_counter()
    rows = run_bench(preset("C3", 3), [5], ["randomized", "naive"], seed=2024)
    per_op = {}
    for op in ("randomized", "naive"):
        mine = [r for r in rows if r.operator == op]
        per_op[op] = sum(r.total_time for r in mine) / max(1, sum(r.operator_invocations for r in mine))
    ratio = per_op["randomized"] / per_op["naive"]
    elapsed = time.perf_counter() - start
    record(10, "timing trend", ratio <= 0.5 and elapsed < 600,
           f"per-step randomized {per_op['randomized']:.2f} ms vs naive {per_op['naive']:.2f} ms, "
           f"ratio {ratio:.3f}, {elapsed:.0f}s")


def test_ac11_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        assert main(["bench", "--class", "C1", "--count", "3", "--k", "1-4", "--seed", "7",
                     "--out", str(path)]) == 0
    capsys.readouterr()
    a, b = (deterministic_view(read_csv(p)) for p in paths)
    record(11, "bench determinism", len(a) == 24 and a == b,
           f"{len(a)} rows, deterministic columns identical: {a == b}")
