"""Command-line entry point: ``ppxh solve|verify|reduce|gen|realize|bench``.

Exit codes: 0 success, 1 infeasible / not realizable / not verified,
2 malformed input or arguments.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path

from .bitlin import rank
from .errors import BudgetError, ParseError, PPXHError, UsageError
from .fpt import DEFAULT_BUDGET, solve_exact
from .graphreal import realize
from .heuristic import HeuristicConfig, heu_best_of_permutations, ratio_r
from .io import (
    export_dot,
    format_instance,
    format_solution,
    generate,
    parse_family,
    parse_instance,
    parse_solution,
)
from .model import Instance, Solution, build_xor_graph, verify
from .poly import solve_2inf, solve_approx, solve_inf2
from .reduce import lift, reduce

log = logging.getLogger("ppxh")

ALGOS = ("auto", "exact", "inf2", "two-inf", "approx", "heuristic")

BENCH_COLUMNS = [
    "n", "h", "m", "instances",
    "avg_independent_characters", "avg_initial_haplotypes", "avg_result_size", "avg_ratio_r", "wall_time_s",
]


def _reduced(fn):
    def run(instance: Instance) -> Solution:
        reduced = reduce(instance)
        return lift(fn(reduced.instance), reduced)
    return run


def solve_instance(instance: Instance, algo: str = "auto", seed: int = 0, perms: int = 10,
                   budget: int = DEFAULT_BUDGET) -> tuple[str, Solution]:
    """Dispatch to a solver; returns the algorithm actually used and a verified solution."""
    if algo == "auto":
        if instance.max_occurrence() <= 2:
            algo = "inf2"
        elif all(bin(g).count("1") <= 2 for g in instance.genotypes):
            algo = "two-inf"
        else:
            kernel = reduce(instance).instance
            # the largest k actually enumerated is n
            algo = "exact" if kernel.n * kernel.m <= budget else "heuristic"
    if algo == "exact":
        solution = solve_exact(instance, budget=budget)
    elif algo == "inf2":
        solution = _reduced(solve_inf2)(instance)
    elif algo == "two-inf":
        solution = solve_2inf(instance)
    elif algo == "approx":
        solution = _reduced(solve_approx)(instance)
    elif algo == "heuristic":
        solution = heu_best_of_permutations(instance, HeuristicConfig(permutations=perms, seed=seed))
    else:
        raise UsageError(f"unknown algorithm {algo!r}")
    solution.check(instance)
    return algo, solution


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_solve(args) -> int:
    instance = parse_instance(args.input, args.format)
    algo, solution = solve_instance(instance, args.algo, args.seed, args.perms, args.budget)
    _write(format_solution(solution.haplotypes, instance.alphabet), args.out)
    if args.dot:
        export_dot(build_xor_graph(instance, solution), args.dot)
    print(f"{algo}: {solution.size} haplotypes for {instance.n} genotypes over {instance.m} characters",
          file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    instance = parse_instance(args.input, args.format)
    haps = parse_solution(args.solution, instance.alphabet)
    if len(set(haps)) != len(haps):
        print("warning: repeated haplotypes ignored", file=sys.stderr)
    found = verify(instance, haps)
    if found is None:
        print("NOT RESOLVED")
        return 1
    print(f"OK {found.size} haplotypes resolve {instance.n} genotypes")
    return 0


def cmd_reduce(args) -> int:
    instance = parse_instance(args.input, args.format)
    reduced = reduce(instance)
    _write(format_instance(reduced.instance), args.out)
    if args.trace:
        lines = []
        for step in reduced.trace:
            record = {"step": type(step).__name__, **asdict(step)}
            record["char"] = instance.alphabet[step.char]
            if "sigma" in record:
                record["sigma"] = [instance.alphabet[j] for j in step.sigma]
            lines.append(json.dumps(record))
        Path(args.trace).write_text("\n".join(lines) + ("\n" if lines else ""))
    print(f"reduced to {reduced.instance.n} genotypes over {reduced.instance.m} characters "
          f"({len(reduced.trace)} steps)", file=sys.stderr)
    return 0


def cmd_gen(args) -> int:
    g = generate(args.n, args.h, args.m, args.seed)
    text = format_instance(g.instance)
    header, _, body = text.partition("\n")
    _write(f"{header}\n# initial_distinct_used: {g.initial_distinct_used}\n{body}", args.out)
    return 0


def cmd_realize(args) -> int:
    family = parse_family(args.input)
    result = realize(family)
    if result is None:
        print("NOT REALIZABLE")
        return 1
    lines = [f"{u} {v} {lab}" for u, v, lab in result.edges]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def bench_rows(ns=(100,), instances: int = 10, seed: int = 0, perms: int = 10, progress=None):
    """Aggregates for the pure-random grid: h and m range over n/4, n/3, 2n/3."""
    rows = []
    for n in ns:
        sizes = [n // 4, n // 3, 2 * n // 3]
        for h in sizes:
            for m in sizes:
                start = time.perf_counter()
                indep = initial = result = ratio = 0.0
                for i in range(instances):
                    g = generate(n, h, m, seed=seed * 1_000_003 + i)
                    sol = heu_best_of_permutations(g.instance, HeuristicConfig(permutations=perms, seed=seed + i))
                    indep += rank(g.instance.matrix())
                    initial += g.initial_distinct_used
                    result += sol.size
                    ratio += sol.size / g.initial_distinct_used
                k = instances
                row = {
                    "n": n, "h": h, "m": m, "instances": k,
                    "avg_independent_characters": round(indep / k, 2),
                    "avg_initial_haplotypes": round(initial / k, 2),
                    "avg_result_size": round(result / k, 2),
                    "avg_ratio_r": ratio_r(ratio, k),
                    "wall_time_s": round(time.perf_counter() - start, 2),
                }
                if progress:
                    progress(row)
                rows.append(row)
    return rows


def cmd_bench(args) -> int:
    if args.suite != "pure-random":
        raise UsageError(f"unknown suite {args.suite!r}")
    ns = (100,) if args.scale == "desk" else (100, 200, 300, 400)
    out = open(args.out, "w", newline="") if args.out not in (None, "-") else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_COLUMNS)
        writer.writeheader()

        def emit(row):
            writer.writerow(row)
            out.flush()

        bench_rows(ns, args.instances, args.seed, args.perms, progress=emit)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ppxh", description="Pure parsimony xor haplotyping")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("--in", dest="input", required=True, help="instance file")
        p.add_argument("--format", choices=("auto", "matrix", "sets", "diploid"), default="auto")

    p = sub.add_parser("solve", help="compute a set of resolving haplotypes")
    add_input(p)
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.add_argument("--out")
    p.add_argument("--dot", help="write the xor-graph in DOT format")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perms", type=int, default=10)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest k*m enumerated by the exact solver")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check that haplotypes resolve an instance")
    add_input(p)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="print the reduced instance")
    add_input(p)
    p.add_argument("--out")
    p.add_argument("--trace", help="write the reduction steps as JSON lines")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("realize", help="solve a graph realization family")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("bench", help="run the random-instance benchmark")
    p.add_argument("--suite", default="pure-random")
    p.add_argument("--scale", choices=("desk", "full"), default="desk")
    p.add_argument("--instances", type=int, default=10)
    p.add_argument("--perms", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, UsageError, BudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PPXHError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
