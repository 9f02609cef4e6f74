"""Node feature pipeline, kept in exact parity with the solver's export.

The trained model only transfers if training-time and inference-time features
agree byte for byte with the solver's `features` command, so every numeric
choice here (BFS order, Brandes accumulation order, ascending rank with
node-id ties, .9g formatting) mirrors the solver's convention precisely.
`predict_knowledge` can additionally take a solver-produced export and
hard-errors if the strings differ.
"""

from __future__ import annotations

from collections import deque

from .graphio import Graph


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
    out = [0.0] * g.n
    for v in range(g.n):
        dist = _bfs_distances(g, v)
        if len(dist) <= 1:
            continue
        out[v] = (len(dist) - 1) / sum(dist.values())
    return out


def betweenness_centrality(g: Graph) -> list[float]:
    bc = [0.0] * g.n
    for s in range(g.n):
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
    return [x / 2.0 for x in bc]


def degree_centrality(g: Graph) -> list[float]:
    return [float(len(a)) for a in g.adj]


def clustering_coefficient(g: Graph) -> list[float]:
    nbr = [set(a) for a in g.adj]
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
    if n < 1 or len(raw) != n:
        raise ValueError("column length must equal n >= 1")
    order = sorted(range(n), key=lambda i: raw[i])
    out = [0.0] * n
    for pos, i in enumerate(order):
        out[i] = (pos + 1) / n - 0.5
    return out


def feature_rows(g: Graph) -> list[tuple[float, float, float, float]]:
    cols = [
        normalize(closeness_centrality(g), g.n),
        normalize(betweenness_centrality(g), g.n),
        normalize(degree_centrality(g), g.n),
        normalize(clustering_coefficient(g), g.n),
    ]
    return [(cols[0][v], cols[1][v], cols[2][v], cols[3][v]) for v in range(g.n)]


def format_features(g: Graph, rows) -> str:
    lines = []
    for v in range(g.n):
        vals = " ".join(format(x, ".9g") for x in rows[v])
        lines.append(f"{g.labels[v]} {vals}")
    return "\n".join(lines) + "\n"
