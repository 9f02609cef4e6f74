"""Brute-force oracles and random-graph helpers shared by tests and `verify`.

The oracles deliberately avoid the production code paths: reachability by
per-pair BFS, cut nodes by remove-and-recount, optima by subset enumeration.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations

from .graph import Graph, graph_from_edges


def random_graph(rng: random.Random, n_max: int = 30, n_min: int = 4,
                 p_min: float = 0.1, p_max: float = 0.3) -> Graph:
    n = rng.randint(n_min, n_max)
    p = rng.uniform(p_min, p_max)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graph_from_edges(n, edges)


def random_connected_graph(rng: random.Random, n_max: int = 30, n_min: int = 4,
                           extra_p: float = 0.08) -> Graph:
    """Random spanning tree plus extra edges: connected by construction."""

    n = rng.randint(n_min, n_max)
    nodes = list(range(n))
    rng.shuffle(nodes)
    edges = []
    for i in range(1, n):
        edges.append((nodes[i], nodes[rng.randrange(i)]))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra_p:
                edges.append((u, v))
    return graph_from_edges(n, edges)


def _reachable(g: Graph, removed: set[int], source: int) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def pairwise_oracle(g: Graph, removed) -> int:
    """Count connected unordered pairs by independent per-node BFS."""

    removed = set(removed)
    count = 0
    for u in range(g.n):
        if u in removed:
            continue
        reach = _reachable(g, removed, u)
        count += sum(1 for v in reach if v > u)
    return count


def component_label_oracle(g: Graph, removed) -> list[int]:
    """Label nodes by repeated BFS from unvisited nodes; -1 for removed."""

    removed = set(removed)
    label = [-1] * g.n
    nxt = 0
    for start in range(g.n):
        if start in removed or label[start] != -1:
            continue
        for v in _reachable(g, removed, start):
            label[v] = nxt
        nxt += 1
    return label


def cut_node_oracle(g: Graph, within=None) -> set[int]:
    """{v : removing v increases the component count of the induced subgraph}."""

    ws = set(range(g.n)) if within is None else set(within)
    outside = set(range(g.n)) - ws
    base = _count_components(g, outside)
    cuts = set()
    for v in ws:
        if _count_components(g, outside | {v}) > base:
            cuts.add(v)
    return cuts


def _count_components(g: Graph, removed: set[int]) -> int:
    seen: set[int] = set()
    count = 0
    for start in range(g.n):
        if start in removed or start in seen:
            continue
        seen |= _reachable(g, removed, start)
        count += 1
    return count


def exhaustive_optimum(g: Graph, k: int) -> int:
    """Exact CNP objective minimum over all size-k deletion sets."""

    from .graph import pairwise_connectivity

    return min(
        pairwise_connectivity(g, set(sub)) for sub in combinations(range(g.n), k)
    )
