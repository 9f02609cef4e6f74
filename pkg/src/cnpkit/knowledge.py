"""Knowledge-file exchange, the deletion-budget rule, and training-corpus generation.

The solver and the node classifier communicate through plain text files: a
knowledge file is one node label per line. Training data pairs random graphs
with binary labels obtained as the union of several independently seeded
solver runs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path

import networkx as nx

from .ga import GAConfig, solve
from .graph import Graph, components, graph_from_edges
from .search import LocalSearchConfig

SPLITS = ("train", "val", "test")


@dataclass(frozen=True)
class KnowledgeSet:
    """Candidate critical-node labels handed to the solver's initializer."""

    nodes: frozenset[int]
    source: str = "file"

    def resolve(self, g: Graph) -> list[int]:
        """Map labels to internal ids, erroring on labels absent from the graph."""

        ids = []
        for lab in sorted(self.nodes):
            if lab not in g.label_to_id:
                raise ValueError(f"knowledge label {lab} not present in graph")
            ids.append(g.label_to_id[lab])
        return ids


@dataclass(frozen=True)
class TrainingExample:
    graph: Graph
    labels: tuple[int, ...]
    k_used: int


def compute_k(n: int, n_c: int) -> int:
    """Deletion budget floor((n / n_c) * 0.3), clamped to at least 1."""

    if n_c == 0:
        raise ValueError("n_c must be positive")
    if not 1 <= n_c <= n:
        raise ValueError("require 1 <= n_c <= n")
    return max(1, math.floor((n / n_c) * 0.3))


def write_knowledge(ks: KnowledgeSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# source={ks.source}\n")
        for lab in sorted(ks.nodes):
            fh.write(f"{lab}\n")


def read_knowledge(path) -> KnowledgeSet:
    nodes = set()
    source = "file"
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            stripped = raw.strip()
            if stripped.startswith("#"):
                if "source=" in stripped:
                    source = stripped.split("source=", 1)[1].strip() or "file"
                continue
            body = raw.split("#", 1)[0].strip()
            if body:
                nodes.add(int(body))
    return KnowledgeSet(nodes=frozenset(nodes), source=source)


def generate_training_graph(
    rng: random.Random,
    n_low: int = 100,
    n_high: int = 300,
    model: str = "mixed",
) -> Graph:
    """One random graph with n uniform in [n_low, n_high].

    ``model``: "er" (G(n,p), p in [0.01, 0.1]), "ba" (attachment m in 1..5),
    or "mixed" (coin flip between the two). The mixture spans a wide degree
    range without assuming any particular original recipe.
    """

    if n_low < 1 or n_high < n_low:
        raise ValueError("invalid node-count range")
    n = rng.randint(n_low, n_high)
    kind = model
    if model == "mixed":
        kind = rng.choice(["er", "ba"])
    seed = rng.randrange(2**32)
    if kind == "er":
        p = rng.uniform(0.01, 0.1)
        nxg = nx.gnp_random_graph(n, p, seed=seed)
    elif kind == "ba":
        m = rng.randint(1, 5)
        nxg = nx.barabasi_albert_graph(n, m, seed=seed)
    else:
        raise ValueError(f"unknown generator model {model!r}")
    return graph_from_edges(n, list(nxg.edges()))


def labeling_config(g: Graph, k: int, seed: int, per_run_cutoff: float) -> GAConfig:
    # reduced budgets: training graphs are small and labeling many of them
    # has to finish on a desktop
    return GAConfig(
        k=k,
        seed=seed,
        pop_size=8,
        cutoff_seconds=per_run_cutoff,
        max_outer_iters=12,
        local=LocalSearchConfig(max_iter=60, limit_num=15),
    )


def label_graph(
    g: Graph,
    runs: int,
    rng: random.Random,
    per_run_cutoff: float = 30.0,
) -> TrainingExample:
    """Binary labels = union of the best solutions from ``runs`` seeded solves."""

    if runs < 1:
        raise ValueError("runs must be >= 1")
    n_c = components(g, set()).count
    k = compute_k(g.n, n_c)
    union: set[int] = set()
    for _ in range(runs):
        seed = rng.randrange(2**62)
        cfg = labeling_config(g, k, seed, per_run_cutoff)
        result = solve(g, [], cfg, init_source="random")
        union |= result.best.members
    labels = tuple(1 if v in union else 0 for v in range(g.n))
    return TrainingExample(graph=g, labels=labels, k_used=k)


def write_instance(g: Graph, path) -> None:
    """Instance-format graph file with an "n m" header (preserves isolated nodes)."""

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u in range(g.n):
            for v in g.adj[u]:
                if u < v:
                    fh.write(f"{g.labels[u]} {g.labels[v]}\n")


def write_training_example(ex: TrainingExample, stem: Path) -> None:
    write_instance(ex.graph, stem.with_suffix(".txt"))
    with open(stem.with_suffix(".labels"), "w", encoding="utf-8") as fh:
        for v in range(ex.graph.n):
            fh.write(f"{ex.graph.labels[v]} {ex.labels[v]}\n")
    with open(stem.with_suffix(".meta"), "w", encoding="utf-8") as fh:
        fh.write(f"{ex.graph.n} {ex.graph.m} {ex.k_used}\n")


def split_assignment(count: int, rng: random.Random) -> list[str]:
    """Exact 60/20/20 partition of ``count`` items, shuffled."""

    n_train = round(count * 0.6)
    n_val = round(count * 0.2)
    tags = ["train"] * n_train + ["val"] * n_val + ["test"] * (count - n_train - n_val)
    rng.shuffle(tags)
    return tags


def gen_corpus(
    out_dir,
    count: int,
    seed: int,
    runs: int = 5,
    per_run_cutoff: float = 10.0,
    n_low: int = 100,
    n_high: int = 300,
) -> Path:
    """Generate, label, and split a training corpus; returns the manifest path."""

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    tags = split_assignment(count, rng)
    manifest_lines = []
    for i in range(count):
        g = generate_training_graph(rng, n_low=n_low, n_high=n_high)
        ex = label_graph(g, runs, rng, per_run_cutoff=per_run_cutoff)
        stem = out / f"graph_{i:04d}"
        write_training_example(ex, stem)
        manifest_lines.append(f"{stem.with_suffix('.txt').name} {tags[i]}")
    manifest = out / "manifest.txt"
    with open(manifest, "w", encoding="utf-8") as fh:
        fh.write("\n".join(manifest_lines) + "\n")
    return manifest


def read_manifest(path) -> list[tuple[Path, str]]:
    base = Path(path).parent
    out = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            name, split = line.split()
            if split not in SPLITS:
                raise ValueError(f"unknown split {split!r} in manifest")
            out.append((base / name, split))
    return out
