"""Per-node structural features and their rank normalization.

Four raw columns per node (closeness, betweenness, degree, clustering) are
rank-normalized to r/n - 0.5 and exported as the text format consumed by the
companion node classifier. Rank direction is ascending (higher raw value,
higher rank); ties are broken by internal node id so the pipeline is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph

COLUMN_ORDER = ("closeness", "betweenness", "degree", "clustering")


@dataclass(frozen=True)
class FeatureMatrix:
    """Normalized feature rows, one per internal node id, columns in COLUMN_ORDER."""

    rows: tuple[tuple[float, float, float, float], ...]

    @property
    def n(self) -> int:
        return len(self.rows)


def _bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def closeness_centrality(g: Graph) -> list[float]:
    """(|C|-1) / sum of distances, taken over each node's own component.

    Isolated nodes get 0; the component-local form keeps disconnected
    benchmark graphs well-defined while preserving within-component ranking.
    """

    out = [0.0] * g.n
    for v in range(g.n):
        dist = _bfs_distances(g, v)
        if len(dist) <= 1:
            continue
        total = sum(dist.values())
        out[v] = (len(dist) - 1) / total
    return out


def betweenness_centrality(g: Graph) -> list[float]:
    """Brandes accumulation; each unordered pair {u,w} is counted once."""

    bc = [0.0] * g.n
    for s in range(g.n):
        # single-source shortest-path DAG counting
        stack: list[int] = []
        preds: list[list[int]] = [[] for _ in range(g.n)]
        sigma = [0.0] * g.n
        sigma[s] = 1.0
        dist = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            stack.append(u)
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
                if dist[w] == dist[u] + 1:
                    sigma[w] += sigma[u]
                    preds[w].append(u)
        delta = [0.0] * g.n
        while stack:
            w = stack.pop()
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    # the double loop over sources counts every unordered pair twice
    return [x / 2.0 for x in bc]


def degree_centrality(g: Graph) -> list[float]:
    return [float(len(a)) for a in g.adj]


def clustering_coefficient(g: Graph) -> list[float]:
    """Edge density among each node's neighbors; 0 when degree < 2."""

    nbr = g.neighbor_sets()
    out = [0.0] * g.n
    for v in range(g.n):
        d = len(g.adj[v])
        if d < 2:
            continue
        links = 0
        neigh = g.adj[v]
        for i, u in enumerate(neigh):
            nu = nbr[u]
            for w in neigh[i + 1:]:
                if w in nu:
                    links += 1
        out[v] = 2.0 * links / (d * (d - 1))
    return out


def normalize(raw: list[float], n: int) -> list[float]:
    """Rank transform: value r/n - 0.5 where r is the 1-based ascending rank.

    Ties take ranks in node-id order (stable sort), so identical inputs map
    to a deterministic output.
    """

    if n < 1 or len(raw) != n:
        raise ValueError("column length must equal n >= 1")
    order = sorted(range(n), key=lambda i: raw[i])
    out = [0.0] * n
    for pos, i in enumerate(order):
        out[i] = (pos + 1) / n - 0.5
    return out


def feature_matrix(g: Graph) -> FeatureMatrix:
    cols = [
        normalize(closeness_centrality(g), g.n),
        normalize(betweenness_centrality(g), g.n),
        normalize(degree_centrality(g), g.n),
        normalize(clustering_coefficient(g), g.n),
    ]
    rows = tuple(
        (cols[0][v], cols[1][v], cols[2][v], cols[3][v]) for v in range(g.n)
    )
    return FeatureMatrix(rows=rows)


def format_features(g: Graph, fm: FeatureMatrix) -> str:
    """One row per node: "label closeness betweenness degree clustering"."""

    lines = []
    for v in range(g.n):
        vals = " ".join(format(x, ".9g") for x in fm.rows[v])
        lines.append(f"{g.labels[v]} {vals}")
    return "\n".join(lines) + "\n"


def write_features(g: Graph, fm: FeatureMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_features(g, fm))


def parse_features(text: str) -> tuple[list[int], list[tuple[float, ...]]]:
    labels: list[int] = []
    rows: list[tuple[float, ...]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 5:
            raise ValueError(f"feature row must have 5 fields: {raw!r}")
        labels.append(int(toks[0]))
        rows.append(tuple(float(t) for t in toks[1:]))
    return labels, rows


def read_features(path) -> tuple[list[int], list[tuple[float, ...]]]:
    with open(path, encoding="utf-8") as fh:
        return parse_features(fh.read())
