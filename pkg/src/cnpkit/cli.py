"""Command-line surface: solve instances, export features, build corpora, verify oracles.

Exit codes: 0 success, 1 oracle/verification failure, 2 usage error. Every
stochastic command flows from a single --seed; when absent one is drawn and
printed so the run stays reproducible.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from pathlib import Path

from . import features as feat
from . import knowledge as kio
from .ga import GAConfig, SolveResult, format_report, solve
from .graph import (
    Graph,
    InstanceParseError,
    components,
    find_cut_nodes,
    load_instance,
    node_removal_connectivity,
    pairwise_connectivity,
)
from .search import LocalSearchConfig


class UsageError(Exception):
    pass


def _load(path: str) -> Graph:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"instance file not found: {path}")
    try:
        return load_instance(p)
    except InstanceParseError as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from exc


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = random.SystemRandom().randrange(2**62)
    print(f"seed {seed} (drawn; pass --seed to reproduce)")
    return seed


def _build_config(args, seed: int) -> GAConfig:
    try:
        return GAConfig(
            k=args.k,
            seed=seed,
            pop_size=args.pop_size,
            crossover_prob=args.cross_prob,
            similarity_weight=args.sim_weight,
            cutoff_seconds=args.cutoff,
            max_outer_iters=args.max_outer_iters,
            local=LocalSearchConfig(max_iter=args.max_iter, limit_num=args.limit_num),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args) -> int:
    g = _load(args.instance)
    if args.k > g.n:
        raise UsageError(f"k={args.k} exceeds node count {g.n}")
    seed = _resolve_seed(args)

    ini_nodes: list[int] = []
    init_source = "random"
    if args.init_nodes:
        if not Path(args.init_nodes).is_file():
            raise UsageError(f"knowledge file not found: {args.init_nodes}")
        ks = kio.read_knowledge(args.init_nodes)
        try:
            ini_nodes = ks.resolve(g)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        init_source = ks.source if ks.source != "file" else "file"

    if args.init_only:
        # initialization quality probe: construct the population without
        # local search and report its best objective
        from .ga import initial_pop
        from .search import PriorityTable

        cfg = _build_config(args, seed)
        rng = random.Random(seed)
        pop = initial_pop(g, ini_nodes, cfg, rng, PriorityTable(g.n), run_improve=False)
        print(f"INIT {pop.best.objective} seed {seed} source {init_source}")
        return 0

    def one_run(run_seed: int) -> SolveResult:
        cfg = _build_config(args, run_seed)
        return solve(g, ini_nodes, cfg, init_source=init_source)

    seeds = [seed + i for i in range(args.runs)]
    if args.runs > 1:
        with ThreadPoolExecutor(max_workers=min(args.runs, 4)) as pool:
            results = list(pool.map(one_run, seeds))
    else:
        results = [one_run(seed)]

    for run_seed, result in zip(seeds, results):
        cfg = _build_config(args, run_seed)
        report = format_report(g, cfg, result, instance=args.instance)
        if args.report:
            path = Path(args.report)
            if args.runs > 1:
                path = path.with_name(f"{path.stem}_seed{run_seed}{path.suffix}")
            path.write_text(report, encoding="utf-8")
        else:
            sys.stdout.write(report)

    if args.runs > 1:
        fs = [r.best.objective for r in results]
        print("instance k f* f_m f_mean")
        print(
            f"{args.instance} {args.k} {min(fs)} {statistics.median(fs)} "
            f"{statistics.mean(fs):.1f}"
        )
    return 0


def cmd_features(args) -> int:
    g = _load(args.instance)
    fm = feat.feature_matrix(g)
    text = feat.format_features(g, fm)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_gen_corpus(args) -> int:
    seed = _resolve_seed(args)
    manifest = kio.gen_corpus(
        args.output,
        count=args.count,
        seed=seed,
        runs=args.label_runs,
        per_run_cutoff=args.cutoff,
        n_low=args.n_min,
        n_high=args.n_max,
    )
    print(f"manifest written to {manifest}")
    return 0


def _verify_pairwise(rng: random.Random) -> tuple[int, int]:
    from .testutil import pairwise_oracle, random_graph

    fails = trials = 0
    for _ in range(30):
        g = random_graph(rng, n_max=30)
        removed = set(rng.sample(range(g.n), rng.randint(0, g.n // 2)))
        trials += 1
        if pairwise_connectivity(g, removed) != pairwise_oracle(g, removed):
            fails += 1
    return trials, fails


def _verify_cut_nodes(rng: random.Random) -> tuple[int, int]:
    from .testutil import cut_node_oracle, random_connected_graph

    fails = trials = 0
    for _ in range(30):
        g = random_connected_graph(rng, n_max=40)
        trials += 1
        if find_cut_nodes(g, range(g.n)) != cut_node_oracle(g):
            fails += 1
    return trials, fails


def _verify_theorem(rng: random.Random) -> tuple[int, int]:
    from .testutil import cut_node_oracle, random_connected_graph

    fails = trials = 0
    for _ in range(30):
        g = random_connected_graph(rng, n_max=40)
        cuts = cut_node_oracle(g)
        if not cuts:
            continue
        trials += 1
        tvals = {v: node_removal_connectivity(g, range(g.n), v) for v in range(g.n)}
        best = min(tvals.values())
        if any(tvals[v] == best and v not in cuts for v in range(g.n)):
            fails += 1
    return trials, fails


def _verify_tiny_optimal(rng: random.Random) -> tuple[int, int]:
    fails = trials = 0
    for _ in range(10):
        from .testutil import random_connected_graph

        g = random_connected_graph(rng, n_max=12)
        k = rng.randint(1, min(3, g.n - 1))
        opt = min(
            pairwise_connectivity(g, set(sub)) for sub in combinations(range(g.n), k)
        )
        cfg = GAConfig(
            k=k,
            seed=rng.randrange(2**32),
            pop_size=6,
            cutoff_seconds=30.0,
            max_outer_iters=40,
            local=LocalSearchConfig(max_iter=40, limit_num=8),
        )
        trials += 1
        if solve(g, [], cfg).best.objective != opt:
            fails += 1
    return trials, fails


def cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    rng = random.Random(seed)
    suites = [
        ("pairwise connectivity vs all-pairs BFS", _verify_pairwise),
        ("cut nodes vs remove-and-recount", _verify_cut_nodes),
        ("argmin t(G,x) is a cut node", _verify_theorem),
        ("tiny-instance optimality", _verify_tiny_optimal),
    ]
    total_fails = 0
    for name, fn in suites:
        trials, fails = fn(rng)
        total_fails += fails
        status = "PASS" if fails == 0 else "FAIL"
        print(f"{status} {name}: {trials - fails}/{trials}")
    return 1 if total_fails else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnpkit",
        description="Critical-node solver toolkit (pairwise-connectivity minimization)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the memetic solver on an instance")
    p_solve.add_argument("--instance", required=True)
    p_solve.add_argument("--k", type=int, required=True)
    p_solve.add_argument("--cutoff", type=float, default=3600.0)
    p_solve.add_argument("--seed", type=int)
    p_solve.add_argument("--runs", type=int, default=1)
    p_solve.add_argument("--init-nodes", help="knowledge file of candidate node labels")
    p_solve.add_argument("--pop-size", type=int, default=20)
    p_solve.add_argument("--cross-prob", type=float, default=0.9)
    p_solve.add_argument("--sim-weight", type=float, default=0.6)
    p_solve.add_argument("--max-iter", type=int, default=1500)
    p_solve.add_argument("--limit-num", type=int, default=100)
    p_solve.add_argument("--report", help="write run report(s) to this path")
    p_solve.add_argument(
        "--max-outer-iters", type=int, help="deterministic iteration cap for testing"
    )
    p_solve.add_argument(
        "--init-only",
        action="store_true",
        help="report the pre-search initial population best and exit",
    )
    p_solve.set_defaults(func=cmd_solve)

    p_feat = sub.add_parser("features", help="export the normalized feature matrix")
    p_feat.add_argument("--instance", required=True)
    p_feat.add_argument("--output")
    p_feat.set_defaults(func=cmd_features)

    p_gen = sub.add_parser("gen-corpus", help="generate and label a training corpus")
    p_gen.add_argument("--output", required=True)
    p_gen.add_argument("--count", type=int, default=300)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--label-runs", type=int, default=10)
    p_gen.add_argument("--cutoff", type=float, default=30.0, help="per labeling run")
    p_gen.add_argument("--n-min", type=int, default=100)
    p_gen.add_argument("--n-max", type=int, default=300)
    p_gen.set_defaults(func=cmd_gen_corpus)

    p_ver = sub.add_parser("verify", help="run the brute-force oracle suites")
    p_ver.add_argument("--seed", type=int)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
