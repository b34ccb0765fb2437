"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from kswap.bench import ClassSpec, preset, run_bench, subseed, write_csv
from kswap.core import InvalidInputError
from kswap.derand import derandomized_search
from kswap.driver import OPERATORS, OperatorKind, local_search
from kswap.generators import (
    CLASSES,
    AdversaryError,
    gen_ksum_reduction,
    gen_lowerbound,
    gen_uniform,
    iter_adversarial,
)
from kswap.io import format_instance, parse_instance
from kswap.oracle import oracle_ksum
from kswap.verify import SUITES, run_suite

MAX_LOWERBOUND_CLI = 24


class UsageError(Exception):
    pass


def _k_list(text: str) -> list[int]:
    ks: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            ks.extend(range(int(lo), int(hi) + 1))
        else:
            ks.append(int(part))
    return ks


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_gen(args) -> int:
    if args.cls:
        n, m, _ = CLASSES[args.cls]
    else:
        if args.n is None or args.m is None:
            raise UsageError("gen needs --class or both --n and --m")
        n, m = args.n, args.m
    instance = gen_uniform(n, m, subseed(args.seed, "gen"), args.lo, args.hi)
    _emit(format_instance(instance), args.out)
    return 0


def cmd_solve(args) -> int:
    text = sys.stdin.read() if args.instance == "-" else open(args.instance, encoding="utf-8").read()
    instance = parse_instance(text)
    op = OperatorKind(args.operator, args.k)
    schedule, stats = local_search(instance, op, seed=subseed(args.seed, "solve"),
                                   iteration_cap=args.max_iters, record=False)
    report = {
        "n": instance.n, "m": instance.m, "k": args.k, "operator": args.operator,
        "makespan": schedule.makespan, "loads": schedule.loads,
        "improving_iterations": stats.improving_iterations,
        "operator_invocations": stats.operator_invocations,
        "status": stats.status, "search_time_ms": stats.wall_time * 1e3,
        "assignment": schedule.assignment,
    }
    _emit(json.dumps(report) + "\n", args.out)
    return 0


def cmd_bench(args) -> int:
    if args.cls:
        spec = preset(args.cls, args.count)
    elif args.n is not None and args.m is not None:
        spec = ClassSpec(f"n{args.n}m{args.m}", args.n, args.m, args.count)
    else:
        raise UsageError("bench needs --class or both --n and --m")
    if args.k:
        ks = _k_list(args.k)
    elif spec.max_k is not None:
        ks = list(range(1, spec.max_k + 1))
    else:
        raise UsageError("bench needs --k for a custom class")
    operators = args.operator or ["randomized", "naive"]
    rows = run_bench(spec, ks, operators, args.seed, args.max_iters)
    if args.out in (None, "-"):
        write_csv(rows, sys.stdout)
    else:
        try:
            write_csv(rows, args.out)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    return 0


def cmd_lowerbound(args) -> int:
    if not 1 <= args.n <= MAX_LOWERBOUND_CLI:
        raise UsageError(f"--n must be in [1, {MAX_LOWERBOUND_CLI}]")
    lb = gen_lowerbound(args.n)
    moves = 0
    try:
        for move, _ in iter_adversarial(lb):
            moves += 1
            if move.size != 3:
                raise AdversaryError(f"move {moves} involves {move.size} jobs")
    except AdversaryError as exc:
        print(json.dumps({"n": args.n, "moves": moves, "passed": False, "error": str(exc)}))
        return 1
    passed = moves >= 2**args.n - 1
    print(json.dumps({"n": args.n, "moves": moves, "bound": 2**args.n - 1, "passed": passed}))
    return 0 if passed else 1


def cmd_ksum(args) -> int:
    numbers = [int(x) for x in args.numbers.replace(",", " ").split()]
    ks = gen_ksum_reduction(numbers, args.k)
    result = derandomized_search(ks.instance, ks.schedule, (0, 1), args.k, k_min=args.k)
    truth = oracle_ksum(ks.numbers, args.k).exists
    report = {
        "k": args.k, "numbers": list(ks.numbers), "negated": ks.negated,
        "loads": ks.schedule.loads, "theta": ks.theta,
        "improving_swap": result.found, "zero_sum_exists": truth,
        "agree": result.found == truth,
    }
    if result.found:
        report["swap_jobs"] = sorted(result.move.out_jobs | result.move.in_jobs)
    if args.out:
        _emit(format_instance(ks.instance), args.out)
    print(json.dumps(report))
    return 0 if result.found == truth else 1


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; available: {', '.join(SUITES)}",
              file=sys.stderr)
        return 2
    kwargs = {} if args.suite == "lowerbound" else {"seed": args.seed}
    report = run_suite(args.suite, **kwargs)
    print(json.dumps(report.to_dict()))
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kswap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a uniform random instance")
    p.add_argument("--class", dest="cls", choices=sorted(CLASSES))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, default=10**9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run local search from LPT on an instance file")
    p.add_argument("instance", help="instance file, or - for stdin")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--operator", choices=OPERATORS, default="randomized")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="benchmark operators on a class of random instances")
    p.add_argument("--class", dest="cls", choices=sorted(CLASSES))
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--k", help="list such as 1-5 or 2,4")
    p.add_argument("--operator", action="append", choices=OPERATORS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("lowerbound", help="replay the exponential 3-swap sequence")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("ksum", help="encode a k-sum input as a schedule and search it")
    p.add_argument("--numbers", required=True, help="comma or space separated integers")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="also write the constructed instance here")
    p.set_defaults(func=cmd_ksum)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
