"""Turn a trained classifier into a predicted critical-node file.

The output format matches what the solver's ``--init-nodes`` option reads:
a ``# source=predicted`` header followed by one node label per line.
"""

from __future__ import annotations

from pathlib import Path

import torch

from .features import format_features
from .graphio import Graph
from .model import CriticalNodeClassifier, forward_graph


class FeatureMismatchError(Exception):
    """Raised when locally computed features disagree with a reference export."""


def check_feature_parity(g: Graph, rows, reference_path: Path) -> None:
    """Hard-error unless our feature export is byte-identical to ``reference_path``.

    Guards against drift between this package's feature pipeline and the
    solver's: a model trained on one must not silently score the other.
    """

    ours = format_features(g, rows)
    theirs = Path(reference_path).read_text()
    if ours != theirs:
        raise FeatureMismatchError(f"feature export differs from {reference_path}")


def critical_scores(model: CriticalNodeClassifier, g: Graph, rows) -> torch.Tensor:
    """Per-node probability of the critical class."""

    model.eval()
    with torch.no_grad():
        logp = forward_graph(model, g, rows)
    return logp[:, 1].exp()


def select_nodes(scores: torch.Tensor, policy: str = "argmax", top_m: int | None = None) -> list[int]:
    """Pick predicted-critical node ids.

    ``argmax`` keeps nodes whose critical probability exceeds 0.5; ``top``
    keeps the ``top_m`` highest-scoring nodes (ties broken by node id).
    """

    if policy == "argmax":
        return [i for i, p in enumerate(scores.tolist()) if p > 0.5]
    if policy == "top":
        if top_m is None or top_m < 1:
            raise ValueError("policy 'top' requires top_m >= 1")
        order = sorted(range(len(scores)), key=lambda i: (-float(scores[i]), i))
        return sorted(order[: min(top_m, len(scores))])
    raise ValueError(f"unknown policy {policy!r}")


def predict_knowledge(
    model: CriticalNodeClassifier,
    g: Graph,
    rows,
    out_path: Path,
    policy: str = "argmax",
    top_m: int | None = None,
) -> list[int]:
    """Score ``g``, select nodes, and write them as a predicted-node file.

    Returns the selected internal node ids; the file holds original labels.
    """

    scores = critical_scores(model, g, rows)
    chosen = select_nodes(scores, policy=policy, top_m=top_m)
    lines = ["# source=predicted"] + [str(g.labels[i]) for i in chosen]
    Path(out_path).write_text("\n".join(lines) + "\n")
    return chosen
