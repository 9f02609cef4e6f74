"""Instance-format parsing for the classifier side.

The solver package defines the on-disk formats; this module reads them
independently (the two components only share files, never code). Parsing
semantics mirror the solver exactly: '%'/'#' comments, optional "n m" header
detected when the declared edge count matches the remaining lines and the
declared node count covers every label, labels remapped densely ascending.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]
    label_to_id: dict[int, int] = field(repr=False)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2


def graph_from_edges(n: int, edges, labels=None) -> Graph:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            continue
        adj[u].add(v)
        adj[v].add(u)
    if labels is None:
        labels = tuple(range(n))
    else:
        labels = tuple(labels)
    return Graph(
        n=n,
        adj=tuple(tuple(sorted(a)) for a in adj),
        labels=labels,
        label_to_id={lab: i for i, lab in enumerate(labels)},
    )


def parse_instance(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%")[0].split("#")[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ValueError(f"line {lineno}: expected two tokens, got {raw!r}")
        u, v = int(toks[0]), int(toks[1])
        pairs.append((u, v))
    if not pairs:
        raise ValueError("empty instance: no edges found")

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
        # 0-based label space unless the largest label equals the declared
        # node count, which signals 1-based numbering
        base = 1 if max(observed) == header[0] else 0
        labels = sorted(set(range(base, base + header[0])) | set(observed))
    else:
        labels = observed
    label_to_id = {lab: i for i, lab in enumerate(labels)}
    edges = [(label_to_id[u], label_to_id[v]) for u, v in pairs]
    return graph_from_edges(len(labels), edges, labels=labels)


def load_instance(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())
