"""Corpus loading for the critical-node classifier.

A corpus directory holds instance files (``<name>.txt``), per-node label
files (``<name>.labels``, one 0/1 per line in node order), optional metadata
(``<name>.meta``) and a ``manifest.txt`` mapping instance names to
train/val/test splits.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import torch

from .features import feature_rows
from .graphio import Graph, load_instance
from .model import attention_mask, features_tensor


@dataclass
class GraphSample:
    name: str
    graph: Graph
    feats: torch.Tensor  # (n, 4) float64
    mask: torch.Tensor  # (n, n) bool
    labels: torch.Tensor  # (n,) long


def read_manifest(path: Path) -> dict[str, list[str]]:
    splits: dict[str, list[str]] = {"train": [], "val": [], "test": []}
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, split = line.split()
        if split not in splits:
            raise ValueError(f"unknown split {split!r} in {path}")
        splits[split].append(name)
    return splits


def load_sample(corpus_dir: Path, name: str) -> GraphSample:
    # manifests list instance filenames; accept them with or without .txt
    name = name.removesuffix(".txt")
    g = load_instance(corpus_dir / f"{name}.txt")
    labels = [-1] * g.n
    for raw in (corpus_dir / f"{name}.labels").read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        node_label, value = line.split()
        v = g.label_to_id.get(int(node_label))
        if v is None:
            raise ValueError(f"{name}: unknown node label {node_label}")
        labels[v] = int(value)
    if any(x not in (0, 1) for x in labels):
        raise ValueError(f"{name}: every node needs a 0/1 label")
    return GraphSample(
        name=name,
        graph=g,
        feats=features_tensor(feature_rows(g)),
        mask=attention_mask(g),
        labels=torch.tensor(labels, dtype=torch.long),
    )


def load_corpus(corpus_dir: Path) -> dict[str, list[GraphSample]]:
    corpus_dir = Path(corpus_dir)
    splits = read_manifest(corpus_dir / "manifest.txt")
    return {
        split: [load_sample(corpus_dir, name) for name in names]
        for split, names in splits.items()
    }
