"""Undirected simple graphs, instance parsing, and the pairwise-connectivity objective.

The objective of interest counts the node pairs that remain connected after a
deletion set S is removed: f(S) = sum over residual components of |C|*(|C|-1)/2.
Everything here is a pure function of an immutable :class:`Graph` plus explicit
arguments, so graphs can be shared freely between concurrent solver runs.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


class InstanceParseError(ValueError):
    """Raised when an instance file cannot be parsed."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph with dense 0-based internal ids."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]
    label_to_id: dict[int, int] = field(repr=False)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbor_sets(self) -> list[set[int]]:
        return [set(a) for a in self.adj]


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components of a graph after a node set has been removed.

    ``comp_id[v]`` is -1 for removed nodes; ``sizes[c]`` is the order of
    component ``c``.
    """

    comp_id: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.sizes)

    def component_nodes(self, cid: int) -> list[int]:
        return [v for v, c in enumerate(self.comp_id) if c == cid]


@dataclass(frozen=True)
class Solution:
    """A deletion set S (|S| <= k) with its cached objective f(S)."""

    members: frozenset[int]
    objective: int

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def graph_from_edges(n: int, edges, labels=None) -> Graph:
    """Build a Graph from 0-based edge pairs, dropping loops and duplicates."""

    adj: list[set[int]] = [set() for _ in range(n)]
    loops = dups = 0
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            loops += 1
            continue
        if v in adj[u]:
            dups += 1
            continue
        adj[u].add(v)
        adj[v].add(u)
    if loops or dups:
        logger.info("dropped %d self-loops and %d duplicate edges", loops, dups)
    if labels is None:
        labels = tuple(range(n))
    else:
        labels = tuple(labels)
    label_to_id = {lab: i for i, lab in enumerate(labels)}
    return Graph(
        n=n,
        adj=tuple(tuple(sorted(a)) for a in adj),
        labels=labels,
        label_to_id=label_to_id,
    )


def parse_instance(text: str | bytes) -> Graph:
    """Parse an edge-list instance into a Graph.

    Accepts plain "u v" lines ('%' or '#' comments) with an optional leading
    "n m" header; the header is detected when the declared edge count matches
    the number of remaining data lines and the declared node count covers
    every observed label. Node labels are arbitrary non-negative integers,
    remapped to dense 0-based ids in ascending label order.
    """

    if isinstance(text, bytes):
        text = text.decode("utf-8")
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%")[0].split("#")[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise InstanceParseError(f"line {lineno}: expected two tokens, got {raw!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise InstanceParseError(f"line {lineno}: non-integer token in {raw!r}") from exc
        if u < 0 or v < 0:
            raise InstanceParseError(f"line {lineno}: negative label in {raw!r}")
        pairs.append((u, v))

    if not pairs:
        raise InstanceParseError("empty instance: no edges found")

    header = None
    if len(pairs) > 1:
        n_decl, m_decl = pairs[0]
        rest = pairs[1:]
        max_label = max(max(u, v) for u, v in rest)
        if m_decl == len(rest) and n_decl >= max_label and n_decl >= 1:
            header = (n_decl, m_decl)
            pairs = rest

    observed = sorted({x for uv in pairs for x in uv})
    if header is not None:
        # Header may declare isolated nodes beyond the observed labels; the
        # label space is 0-based unless the largest label equals the declared
        # node count, which signals 1-based numbering.
        n_decl = header[0]
        base = 1 if max(observed) == n_decl else 0
        full = sorted(set(range(base, base + n_decl)) | set(observed))
        labels = full
    else:
        labels = observed
    label_to_id = {lab: i for i, lab in enumerate(labels)}
    edges = [(label_to_id[u], label_to_id[v]) for u, v in pairs]
    return graph_from_edges(len(labels), edges, labels=labels)


def load_instance(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())


def components(g: Graph, removed) -> ComponentPartition:
    """Partition V(g) minus ``removed`` into connected components via BFS."""

    removed = set(removed)
    for v in removed:
        if not (0 <= v < g.n):
            raise ValueError(f"removed node {v} out of range")
    comp_id = [-1] * g.n
    sizes: list[int] = []
    adj = g.adj
    for start in range(g.n):
        if comp_id[start] != -1 or start in removed:
            continue
        cid = len(sizes)
        comp_id[start] = cid
        queue = deque([start])
        size = 0
        while queue:
            u = queue.popleft()
            size += 1
            for w in adj[u]:
                if comp_id[w] == -1 and w not in removed:
                    comp_id[w] = cid
                    queue.append(w)
        sizes.append(size)
    return ComponentPartition(comp_id=tuple(comp_id), sizes=tuple(sizes))


def pairwise_connectivity(g: Graph, removed) -> int:
    """f(S): number of still-connected node pairs after removing S."""

    part = components(g, removed)
    return sum(c * (c - 1) // 2 for c in part.sizes)


def pairs(c: int) -> int:
    return c * (c - 1) // 2


def find_cut_nodes(g: Graph, within) -> set[int]:
    """Articulation points of the subgraph induced by ``within``.

    Single iterative depth-first pass with low-link values, O(|V|+|E|).
    ``within`` must induce a connected subgraph.
    """

    ws = set(within)
    if not ws:
        raise ValueError("within must be non-empty")
    root = next(iter(ws))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, int | None] = {root: None}
    cuts: set[int] = set()
    root_children = 0
    timer = 0
    # stack entries: (node, iterator over neighbors)
    disc[root] = low[root] = timer
    timer += 1
    stack = [(root, iter(g.adj[root]))]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in ws:
                continue
            if w not in disc:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                if v == root:
                    root_children += 1
                stack.append((w, iter(g.adj[w])))
                advanced = True
                break
            elif w != parent[v]:
                if disc[w] < low[v]:
                    low[v] = disc[w]
        if not advanced:
            stack.pop()
            p = parent[v]
            if p is not None:
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != root and low[v] >= disc[p]:
                    cuts.add(p)
    if len(disc) != len(ws):
        raise ValueError("within does not induce a connected subgraph")
    if root_children >= 2:
        cuts.add(root)
    return cuts


def node_removal_connectivity(g: Graph, within, v: int) -> int:
    """t(C, v): pairwise connectivity of the induced subgraph after removing v."""

    ws = set(within)
    if v not in ws:
        raise ValueError(f"node {v} not in the given component")
    ws.discard(v)
    seen: set[int] = set()
    total = 0
    for start in ws:
        if start in seen:
            continue
        size = 0
        queue = deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            size += 1
            for w in g.adj[u]:
                if w in ws and w not in seen:
                    seen.add(w)
                    queue.append(w)
        total += pairs(size)
    return total


def reinsertion_objective(g: Graph, part: ComponentPartition, f_s: int, u: int) -> int:
    """f(S \\ {u}) from f(S) by merging the components adjacent to u.

    ``part`` must be the partition of g - S with u in S. Re-inserting u fuses
    the distinct residual components touching u into one block of size
    1 + sum of their sizes.
    """

    comp_ids = {part.comp_id[w] for w in g.adj[u] if part.comp_id[w] != -1}
    merged = 1
    removed_pairs = 0
    for cid in comp_ids:
        c = part.sizes[cid]
        merged += c
        removed_pairs += pairs(c)
    return f_s - removed_pairs + pairs(merged)


def best_removal(
    g: Graph,
    s: Solution,
    rng,
    exclude: int | None = None,
    part: ComponentPartition | None = None,
) -> tuple[int, int]:
    """The member u minimizing f(S \\ {u}), with that objective value.

    Evaluated per candidate with the re-insertion merge formula; ties are
    broken uniformly at random by ``rng``. ``exclude`` skips one member
    (the just-added node during a swap).
    """

    candidates = [u for u in s.sorted_members() if u != exclude]
    if not candidates:
        raise ValueError("best_removal on an empty candidate set")
    if part is None:
        part = components(g, s.members)
    best_val: int | None = None
    best_nodes: list[int] = []
    for u in candidates:
        val = reinsertion_objective(g, part, s.objective, u)
        if best_val is None or val < best_val:
            best_val = val
            best_nodes = [u]
        elif val == best_val:
            best_nodes.append(u)
    u = best_nodes[0] if len(best_nodes) == 1 else rng.choice(best_nodes)
    return u, best_val
