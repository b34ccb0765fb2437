import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kswap.core import InvalidInputError, is_improving
from kswap.neighborhood import (
    Partition,
    SumEntry,
    as_array,
    build_sum_table,
    gamma,
    mim_single_run,
    naive_search,
    randomized_search,
    signed_sum,
    subset_sums,
    unrank_colex,
    window_query,
)
from kswap.oracle import oracle_improving

from conftest import make


def test_signed_sum():
    inst, s = make([5, 4, 3], [0, 0, 1])
    assert signed_sum(inst, s, (0, 1), [0, 2]) == 2
    assert signed_sum(inst, s, (0, 1), [2]) == -3
    assert signed_sum(inst, s, (0, 1), []) == 0


def test_signed_sum_rejects_foreign_job():
    inst, s = make([5, 4, 3], [0, 2, 1], m=3)
    with pytest.raises(InvalidInputError):
        signed_sum(inst, s, (0, 1), [1])


def test_build_sum_table():
    inst, s = make([5, 4, 3], [0, 0, 1])
    table = build_sum_table(inst, s, (0, 1), [0, 2], 1)
    assert {(e.value, e.jobs) for e in table} == {(5, frozenset({0})), (-3, frozenset({2}))}
    inst, s = make([5, 4, 3, 2], [0, 0, 1, 1])
    assert len(build_sum_table(inst, s, (0, 1), range(4), 2)) == 6
    assert build_sum_table(inst, s, (0, 1), range(4), 0) == [SumEntry(0, frozenset())]
    assert build_sum_table(inst, s, (0, 1), [0, 1], 3) == []


@pytest.mark.parametrize("s, r", [(0, 0), (5, 0), (5, 1), (6, 3), (7, 7), (8, 5), (3, 4)])
def test_subset_sums_and_unrank_match_itertools(s, r):
    values = np.array([3**i for i in range(s)], dtype=np.int64)
    sums = subset_sums(values, r)
    assert len(sums) == (math.comb(s, r) if r <= s else 0)
    seen = set()
    for rank, v in enumerate(sums):
        pos = unrank_colex(rank, r)
        assert pos == sorted(set(pos)) and len(pos) == r
        assert sum(int(values[q]) for q in pos) == v
        seen.add(tuple(pos))
    assert seen == set(combinations(range(s), r)) if r <= s else not seen


def test_big_values_use_exact_arithmetic():
    vals = as_array([2**125, -(2**124), 2**100])
    assert vals.dtype == object
    sums = subset_sums(vals, 2)
    assert sorted(sums.tolist()) == sorted([2**125 - 2**124, 2**125 + 2**100, 2**100 - 2**124])


def _linear_window(values, x, delta):
    return [v for v in values if -x < v < delta - x]


def test_window_query_examples():
    entries = [SumEntry(v, frozenset()) for v in [-3, 0, 2, 7]]
    assert window_query(entries, 1, 4).value in (0, 2)
    assert window_query([SumEntry(5, frozenset())], 0, 4) is None
    assert window_query([SumEntry(1, frozenset())], 0, 2).value == 1


def test_window_query_agrees_with_linear_scan():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        values = sorted(int(v) for v in rng.integers(-20, 21, size=rng.integers(0, 8)))
        x = int(rng.integers(-25, 26))
        delta = int(rng.integers(0, 15))
        got = window_query([SumEntry(v, frozenset()) for v in values], x, delta)
        expected = _linear_window(values, x, delta)
        if expected:
            assert got is not None and got.value in expected
        else:
            assert got is None


def test_mim_example_split_partition(four_jobs):
    inst, s = four_jobs
    res = mim_single_run(inst, s, (0, 1), 2, Partition.from_sides([0, 2], [1, 3]))
    assert res.move.out_jobs == {0} and res.move.in_jobs == {3}
    assert res.move.gain == 3
    assert is_improving(s, res.move)
    # brute force agrees that an improving 2-swap exists here
    assert oracle_improving(inst, s, 2, k_min=2).exists


def test_mim_example_machine_partition(four_jobs):
    inst, s = four_jobs
    res = mim_single_run(inst, s, (0, 1), 2, Partition.from_sides([0, 1], [2, 3]))
    assert res.found
    assert len(res.move.out_jobs) == 1 and len(res.move.in_jobs) == 1
    assert 0 < res.move.gain < 4


def test_mim_balanced_loads_returns_none():
    inst, s = make([6, 4, 5, 5], [0, 0, 1, 1])
    for k in range(1, 5):
        res = mim_single_run(inst, s, (0, 1), k, Partition.from_sides([0, 2], [1, 3]))
        assert not res.found


def test_mim_degenerate_side_counts_as_repetition(four_jobs):
    inst, s = four_jobs
    res = mim_single_run(inst, s, (0, 1), 4, Partition.from_sides([0], [1, 2, 3]))
    assert not res.found and res.repetitions == 1


@pytest.mark.parametrize("k, expected", [(1, 2), (2, 2), (3, 3), (4, 3), (5, 4)])
def test_gamma(k, expected):
    assert gamma(k) == expected


@pytest.mark.parametrize("k", [0, -1])
def test_gamma_rejects_nonpositive(k):
    with pytest.raises(InvalidInputError):
        gamma(k)


def test_naive_examples():
    inst, s = make([6, 5, 2], [0, 0, 1])
    res = naive_search(inst, s, (0, 1), 2)
    assert res.move.out_jobs == {0} and not res.move.in_jobs and res.move.gain == 6

    inst, s = make([8], [0])
    assert not naive_search(inst, s, (0, 1), 1).found

    inst, s = make([4, 3, 5], [0, 0, 1])
    res = naive_search(inst, s, (0, 1), 2)
    assert not res.found
    verdict = oracle_improving(inst, s, 2)
    assert not verdict.exists and verdict.enumerated == 6


def test_randomized_balanced_is_none():
    inst, s = make([3, 3], [0, 1])
    res = randomized_search(inst, s, (0, 1), 3, 0)
    assert not res.found and res.repetitions == 0


def test_randomized_deterministic_per_seed(four_jobs):
    inst, s = four_jobs
    a = randomized_search(inst, s, (0, 1), 3, np.random.default_rng(11))
    b = randomized_search(inst, s, (0, 1), 3, np.random.default_rng(11))
    assert a == b


def test_randomized_frequency_on_example(four_jobs):
    """Frequency over repeated gamma-batches with k_max = 2."""
    inst, s = four_jobs
    rng = np.random.default_rng(3)
    hits = 0
    for _ in range(400):
        res = randomized_search(inst, s, (0, 1), 2, rng)
        if res.found:
            assert is_improving(s, res.move)
            hits += 1
    assert hits / 400 >= 1 - 1 / math.e


def test_randomized_single_jump_success_rate():
    # jumps of job 0 (gain 6) and job 1 (gain 5) both improve; a run succeeds
    # iff one of them lands on the a-side (3/4), a gamma(1) = 2 batch w.p. 15/16
    inst, s = make([6, 5, 2], [0, 0, 1])
    assert oracle_improving(inst, s, 1).exists
    rng = np.random.default_rng(5)
    runs = 1000
    hits = sum(randomized_search(inst, s, (0, 1), 1, rng).found for _ in range(runs))
    assert hits / runs >= 0.5
    assert abs(hits / runs - 15 / 16) < 0.03


# (p, assignment) with exactly one improving exact-k job set, found by search
UNIQUE_WITNESS = {
    2: ([127088, 778889, 364917, 78203, 358958, 200183, 864034, 628489, 95827, 217802],
        [0, 1, 1, 1, 1, 0, 0, 0, 1, 1]),
    3: ([532090, 990908, 666228, 145568, 742612, 652139, 592154, 894496, 454250, 222643],
        [1, 1, 1, 0, 1, 0, 0, 0, 0, 0]),
    4: ([904077, 574044, 447991, 433698, 793467, 696080, 56766, 165642, 476744, 409710],
        [1, 0, 1, 1, 0, 0, 1, 1, 1, 0]),
}


def _improving_sets(inst, s, pair, k):
    src, dst = pair
    window = s.loads[src] - s.loads[dst]
    sign = {src: 1, dst: -1}
    return [c for c in combinations(range(inst.n), k)
            if 0 < sum(sign[s.assignment[j]] * inst.p[j] for j in c) < window]


@pytest.mark.parametrize("k", sorted(UNIQUE_WITNESS))
def test_partition_success_bound(k):
    """With a unique witness, one run succeeds w.p. C(k, ceil(k/2)) / 2^k."""
    inst, s = make(*UNIQUE_WITNESS[k])
    pair = (0, 1) if s.loads[0] >= s.loads[1] else (1, 0)
    assert len(_improving_sets(inst, s, pair, k)) == 1
    rng = np.random.default_rng(k)
    runs = 2000
    hits = 0
    for _ in range(runs):
        bits = rng.integers(0, 2, size=inst.n)
        part = Partition.from_sides(np.flatnonzero(bits == 0).tolist(),
                                    np.flatnonzero(bits == 1).tolist())
        res = mim_single_run(inst, s, pair, k, part)
        if res.found:
            assert is_improving(s, res.move)
            hits += 1
    bound = math.comb(k, (k + 1) // 2) / 2**k
    sigma = math.sqrt(bound * (1 - bound) / runs)
    assert abs(hits / runs - bound) < 4 * sigma


@st.composite
def small_two_machine(draw, n_max=9, p_max=40):
    n = draw(st.integers(1, n_max))
    p = draw(st.lists(st.integers(0, p_max), min_size=n, max_size=n))
    assignment = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return make(p, assignment)


@settings(max_examples=300, deadline=None)
@given(small_two_machine(), st.integers(1, 4))
def test_naive_complete_and_sound(case, k):
    inst, s = case
    src = 0 if s.loads[0] >= s.loads[1] else 1
    res = naive_search(inst, s, (src, 1 - src), k)
    assert res.found == oracle_improving(inst, s, k).exists
    if res.found:
        assert is_improving(s, res.move) and res.move.size <= k


@settings(max_examples=200, deadline=None)
@given(small_two_machine(), st.integers(1, 4), st.integers(0, 2**32))
def test_randomized_sound(case, k, seed):
    inst, s = case
    src = 0 if s.loads[0] >= s.loads[1] else 1
    res = randomized_search(inst, s, (src, 1 - src), k, seed)
    if res.found:
        assert is_improving(s, res.move) and res.move.size <= k
    else:
        assert res.move is None


def test_naive_huge_values_fallback():
    big = 2**120
    # loads (2 big + 3, 2 big): only swapping job 0 for job 2 (gain 2) lands in (0, 3)
    inst, s = make([big + 2, big + 1, big, big], [0, 0, 1, 1])
    res = naive_search(inst, s, (0, 1), 2)
    assert res.move.out_jobs == {0} and res.move.in_jobs == {2} and res.move.gain == 2
    assert oracle_improving(inst, s, 2).exists
    part = Partition.from_sides([0, 1], [2, 3])
    assert mim_single_run(inst, s, (0, 1), 2, part).move.gain in (1, 2)
