"""Graph-attention classifier for critical-node prediction.

Stacked attention layers (masked softmax over each node's closed neighborhood,
LeakyReLU slope 0.2 on the attention logits) followed by a three-layer fully
connected head with ELU and a LogSoftmax output over {ordinary, critical}.
Dense n-by-n attention keeps the implementation simple; corpora graphs have a
few hundred nodes. All parameters are float64 so permutation equivariance
holds to tight tolerances on CPU.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch
import torch.nn as nn
import torch.nn.functional as F

from .graphio import Graph

IN_FEATURES = 4
NUM_CLASSES = 2


@dataclass
class ModelConfig:
    hidden_dims: int = 64
    layer_num: int = 4
    fc_layers: int = 3
    heads: int = 4
    learning_rate: float = 0.001
    weight_decay: float = 0.001
    epochs: int = 200

    def __post_init__(self):
        for name in ("hidden_dims", "layer_num", "fc_layers", "heads", "epochs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.hidden_dims % self.heads != 0:
            raise ValueError("hidden_dims must be divisible by heads")
        if self.learning_rate <= 0 or self.weight_decay < 0:
            raise ValueError("invalid optimizer hyperparameters")


class GraphAttentionLayer(nn.Module):
    """One multi-head attention layer over closed neighborhoods.

    ``combine`` is "concat" (head outputs concatenated, hidden layers) or
    "mean" (head outputs averaged, output layer).
    """

    def __init__(self, in_dim: int, head_dim: int, heads: int, combine: str = "concat"):
        super().__init__()
        if combine not in ("concat", "mean"):
            raise ValueError("combine must be 'concat' or 'mean'")
        self.heads = heads
        self.head_dim = head_dim
        self.combine = combine
        self.weight = nn.Parameter(torch.empty(heads, in_dim, head_dim, dtype=torch.float64))
        self.att_src = nn.Parameter(torch.empty(heads, head_dim, dtype=torch.float64))
        self.att_dst = nn.Parameter(torch.empty(heads, head_dim, dtype=torch.float64))
        nn.init.xavier_uniform_(self.weight)
        nn.init.xavier_uniform_(self.att_src.unsqueeze(0))
        nn.init.xavier_uniform_(self.att_dst.unsqueeze(0))
        # residual projection: repeated neighborhood averaging otherwise
        # collapses all node representations within a few layers
        out_dim = heads * head_dim if combine == "concat" else head_dim
        self.residual = nn.Linear(in_dim, out_dim, bias=False, dtype=torch.float64)

    def forward(self, h: torch.Tensor, mask: torch.Tensor):
        """h: (n, in_dim); mask: (n, n) bool, True where j attends into i.

        Returns (output, attention) with attention of shape (heads, n, n).
        """
        wh = torch.einsum("nf,hfd->hnd", h, self.weight)  # (H, n, d)
        score_src = torch.einsum("hnd,hd->hn", wh, self.att_src)
        score_dst = torch.einsum("hnd,hd->hn", wh, self.att_dst)
        logits = score_src.unsqueeze(2) + score_dst.unsqueeze(1)  # (H, i, j)
        logits = F.leaky_relu(logits, negative_slope=0.2)
        logits = logits.masked_fill(~mask.unsqueeze(0), float("-inf"))
        att = torch.softmax(logits, dim=2)
        out = torch.einsum("hij,hjd->hid", att, wh)
        if self.combine == "concat":
            out = out.permute(1, 0, 2).reshape(h.shape[0], self.heads * self.head_dim)
        else:
            out = out.mean(dim=0)
        return out + self.residual(h), att


class CriticalNodeClassifier(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.cfg = cfg
        head_dim = cfg.hidden_dims // cfg.heads
        layers = []
        in_dim = IN_FEATURES
        for i in range(cfg.layer_num):
            last = i == cfg.layer_num - 1
            if last:
                layers.append(GraphAttentionLayer(in_dim, cfg.hidden_dims, cfg.heads, "mean"))
                in_dim = cfg.hidden_dims
            else:
                layers.append(GraphAttentionLayer(in_dim, head_dim, cfg.heads, "concat"))
                in_dim = cfg.heads * head_dim
        self.gat_layers = nn.ModuleList(layers)
        fc = []
        for i in range(cfg.fc_layers):
            out_dim = NUM_CLASSES if i == cfg.fc_layers - 1 else cfg.hidden_dims
            fc.append(nn.Linear(in_dim, out_dim, dtype=torch.float64))
            in_dim = out_dim
        self.fc_layers = nn.ModuleList(fc)

    def forward(self, feats: torch.Tensor, mask: torch.Tensor, return_attention: bool = False):
        h = feats
        attentions = []
        for layer in self.gat_layers:
            h, att = layer(h, mask)
            h = F.elu(h)
            attentions.append(att)
        for i, lin in enumerate(self.fc_layers):
            h = lin(h)
            if i < len(self.fc_layers) - 1:
                h = F.elu(h)
        logprobs = F.log_softmax(h, dim=1)
        if return_attention:
            return logprobs, attentions
        return logprobs


def attention_mask(g: Graph) -> torch.Tensor:
    """Closed-neighborhood mask: each node attends to itself and its neighbors."""

    mask = torch.eye(g.n, dtype=torch.bool)
    for u in range(g.n):
        for v in g.adj[u]:
            mask[u, v] = True
    return mask


def features_tensor(rows) -> torch.Tensor:
    return torch.tensor(rows, dtype=torch.float64)


def forward_graph(model: CriticalNodeClassifier, g: Graph, rows, return_attention=False):
    if len(rows) != g.n:
        raise ValueError(f"feature row count {len(rows)} != node count {g.n}")
    return model(features_tensor(rows), attention_mask(g), return_attention=return_attention)
