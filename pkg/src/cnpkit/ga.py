"""Population-level search: initialization from predicted nodes, intersection
crossover with greedy repair, and diversity-scored replacement.

All stochastic choices draw from a single seeded ``random.Random`` in a fixed
call order (initialization, then per outer iteration: parent sampling,
crossover coin, crossover/cloning, local search), so a run is reproducible
from (instance, config, seed) alone when capped by iterations.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .graph import Graph, Solution, best_removal, components, pairwise_connectivity
from .search import (
    LocalSearchConfig,
    PriorityTable,
    improve,
    select_large_component,
)


@dataclass
class GAConfig:
    k: int
    seed: int = 0
    pop_size: int = 20
    crossover_prob: float = 0.9
    similarity_weight: float = 0.6
    cutoff_seconds: float = 3600.0
    max_outer_iters: int | None = None
    local: LocalSearchConfig = field(default_factory=LocalSearchConfig)

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError("pop_size must be >= 2")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError("crossover_prob must be in [0,1]")
        if not 0.0 <= self.similarity_weight <= 1.0:
            raise ValueError("similarity_weight must be in [0,1]")
        if self.cutoff_seconds <= 0:
            raise ValueError("cutoff_seconds must be positive")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass
class Population:
    individuals: list[Solution]

    @property
    def best(self) -> Solution:
        return min(self.individuals, key=lambda s: s.objective)


@dataclass
class SolveResult:
    best: Solution
    trajectory: list[tuple[float, int]]
    iterations: int
    seed: int
    init_source: str


def construct_individual(g: Graph, ini_nodes: list[int], k: int, rng) -> set[int]:
    """One pre-improvement individual per the knowledge-seeded recipe.

    Sample k nodes from the candidate set when it is oversized; otherwise take
    all of it and pad with uniform random nodes from the rest of the graph.
    """

    if k > g.n:
        raise ValueError(f"k={k} exceeds node count {g.n}")
    if len(ini_nodes) > k:
        return set(rng.sample(ini_nodes, k))
    s = set(ini_nodes)
    outside = [v for v in range(g.n) if v not in s]
    while len(s) < k:
        v = rng.choice(outside)
        if v not in s:
            s.add(v)
            outside.remove(v)
    return s


def initial_pop(
    g: Graph,
    ini_nodes: list[int],
    cfg: GAConfig,
    rng,
    prio: PriorityTable,
    run_improve: bool = True,
) -> Population:
    """Build pop_size individuals from the candidate node set, each locally improved.

    ``run_improve=False`` yields the raw constructed population; used to
    measure initialization quality in isolation.
    """

    individuals: list[Solution] = []
    for _ in range(cfg.pop_size):
        members = construct_individual(g, ini_nodes, cfg.k, rng)
        sol = Solution(
            members=frozenset(members),
            objective=pairwise_connectivity(g, members),
        )
        if run_improve:
            sol = improve(g, sol, cfg.local, prio, rng)
        individuals.append(sol)
    return Population(individuals=individuals)


def cross(g: Graph, s_i: Solution, s_j: Solution, k: int, rng) -> Solution:
    """Intersection crossover with greedy deletion / large-component padding."""

    members = set(s_i.members & s_j.members)
    f = pairwise_connectivity(g, members)
    while len(members) > k:
        sol = Solution(members=frozenset(members), objective=f)
        u, f = best_removal(g, sol, rng)
        members.discard(u)
    while len(members) < k:
        part = components(g, members)
        if part.count == 0:
            break
        cid = select_large_component(part, rng)
        comp_nodes = part.component_nodes(cid)
        v = comp_nodes[0] if len(comp_nodes) == 1 else rng.choice(comp_nodes)
        members.add(v)
        f = pairwise_connectivity(g, members)
    return Solution(members=frozenset(members), objective=f)


def ad_score(pop: Population, i: int) -> float:
    """Average set-difference of individual i against the population."""

    si = pop.individuals[i].members
    total = sum(len(si - sj.members) for sj in pop.individuals)
    return total / len(pop.individuals)


def rank_scores(pop: Population, a: float) -> list[float]:
    """score_i = a * drank(AD_i) + (1-a) * irank(f_i).

    drank ranks AD descending (largest diversity -> rank 1), irank ranks the
    objective ascending (smallest f -> rank 1); ties take consecutive ranks in
    individual-index order.
    """

    p = len(pop.individuals)
    ads = [ad_score(pop, i) for i in range(p)]
    fs = [s.objective for s in pop.individuals]
    drank = [0] * p
    for pos, i in enumerate(sorted(range(p), key=lambda i: (-ads[i], i))):
        drank[i] = pos + 1
    irank = [0] * p
    for pos, i in enumerate(sorted(range(p), key=lambda i: (fs[i], i))):
        irank[i] = pos + 1
    return [a * drank[i] + (1 - a) * irank[i] for i in range(p)]


def update_pop(pop: Population, improved: Solution, a: float) -> None:
    """Replace the individual with the largest score by ``improved`` in place."""

    scores = rank_scores(pop, a)
    worst = max(range(len(scores)), key=lambda i: scores[i])
    pop.individuals[worst] = improved


def solve(g: Graph, ini_nodes: list[int], cfg: GAConfig, init_source: str = "random") -> SolveResult:
    """Run the full memetic loop until the wall-clock cutoff or iteration cap.

    ``ini_nodes`` holds internal node ids of the predicted candidate set
    (empty for pure random initialization).
    """

    rng = random.Random(cfg.seed)
    prio = PriorityTable(g.n)
    t0 = time.perf_counter()

    pop = initial_pop(g, ini_nodes, cfg, rng, prio)
    best = pop.best
    trajectory = [(time.perf_counter() - t0, best.objective)]

    iters = 0
    while time.perf_counter() - t0 < cfg.cutoff_seconds:
        if cfg.max_outer_iters is not None and iters >= cfg.max_outer_iters:
            break
        i, j = rng.sample(range(len(pop.individuals)), 2)
        s_i, s_j = pop.individuals[i], pop.individuals[j]
        if rng.random() < cfg.crossover_prob:
            child = cross(g, s_i, s_j, cfg.k, rng)
        else:
            child = min(s_i, s_j, key=lambda s: s.objective)
        child = improve(g, child, cfg.local, prio, rng)
        if child.objective < best.objective:
            best = child
            trajectory.append((time.perf_counter() - t0, best.objective))
            update_pop(pop, child, cfg.similarity_weight)
        iters += 1

    return SolveResult(
        best=best,
        trajectory=trajectory,
        iterations=iters,
        seed=cfg.seed,
        init_source=init_source,
    )


def format_report(g: Graph, cfg: GAConfig, result: SolveResult, instance: str = "-") -> str:
    """Line-oriented run report: config header, improvement trajectory, final line."""

    lines = [
        f"# instance {instance}",
        f"# n {g.n} m {g.m} k {cfg.k} seed {result.seed}",
        "# pop_size {} cross_prob {} sim_weight {} cutoff {} max_iter {} "
        "limit_num {} max_outer_iters {} init_source {}".format(
            cfg.pop_size,
            cfg.crossover_prob,
            cfg.similarity_weight,
            cfg.cutoff_seconds,
            cfg.local.max_iter,
            cfg.local.limit_num,
            cfg.max_outer_iters,
            result.init_source,
        ),
    ]
    for t, f in result.trajectory:
        lines.append(f"{t:.3f} {f}")
    labels = " ".join(str(g.labels[v]) for v in result.best.sorted_members())
    lines.append(f"BEST {result.best.objective} {len(result.best.members)} {labels}")
    return "\n".join(lines) + "\n"
