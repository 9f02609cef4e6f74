"""Training loop and hyperparameter search for the classifier.

Loss is negative log-likelihood with inverse-frequency class weights computed
over the training split, so the rare critical class is not drowned out.
Model selection keeps the epoch with the best validation AUC.
"""

from __future__ import annotations

import csv
import logging
import random
from dataclasses import dataclass, replace
from pathlib import Path

import torch
import torch.nn.functional as F
from sklearn.metrics import roc_auc_score

from .data import GraphSample
from .model import CriticalNodeClassifier, ModelConfig

log = logging.getLogger(__name__)


@dataclass
class TrainResult:
    config: ModelConfig
    best_auc: float
    best_epoch: int
    history: list[tuple[int, float, float]]  # (epoch, train_loss, val_auc)
    checkpoint_path: Path | None


def class_weights(samples: list[GraphSample]) -> torch.Tensor:
    counts = torch.zeros(2, dtype=torch.float64)
    for s in samples:
        counts += torch.bincount(s.labels, minlength=2).to(torch.float64)
    if (counts == 0).any():
        return torch.ones(2, dtype=torch.float64)
    total = counts.sum()
    return total / (2.0 * counts)


def epoch_loss(model, samples, weights, optimizer=None) -> float:
    total = 0.0
    for s in samples:
        logp = model(s.feats, s.mask)
        loss = F.nll_loss(logp, s.labels, weight=weights)
        if optimizer is not None:
            optimizer.zero_grad()
            loss.backward()
            optimizer.step()
        total += float(loss.detach())
    return total / max(1, len(samples))


def validation_auc(model, samples) -> float:
    scores, labels = [], []
    with torch.no_grad():
        for s in samples:
            logp = model(s.feats, s.mask)
            scores.extend(logp[:, 1].exp().tolist())
            labels.extend(s.labels.tolist())
    if len(set(labels)) < 2:
        return 0.5
    return float(roc_auc_score(labels, scores))


def train(
    train_samples: list[GraphSample],
    val_samples: list[GraphSample],
    cfg: ModelConfig | None = None,
    seed: int = 0,
    checkpoint_path: Path | None = None,
    metrics_path: Path | None = None,
) -> TrainResult:
    cfg = cfg or ModelConfig()
    torch.manual_seed(seed)
    model = CriticalNodeClassifier(cfg)
    optimizer = torch.optim.Adam(
        model.parameters(), lr=cfg.learning_rate, weight_decay=cfg.weight_decay
    )
    weights = class_weights(train_samples)

    best_auc, best_epoch = -1.0, -1
    best_state = None
    history: list[tuple[int, float, float]] = []
    for epoch in range(cfg.epochs):
        model.train()
        loss = epoch_loss(model, train_samples, weights, optimizer)
        model.eval()
        auc = validation_auc(model, val_samples) if val_samples else 0.5
        history.append((epoch, loss, auc))
        if auc > best_auc:
            best_auc, best_epoch = auc, epoch
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
        if epoch % 20 == 0:
            log.info("epoch %d loss %.4f val_auc %.4f", epoch, loss, auc)

    if best_state is not None:
        model.load_state_dict(best_state)
    if checkpoint_path is not None:
        torch.save({"config": cfg.__dict__, "state_dict": model.state_dict()}, checkpoint_path)
    if metrics_path is not None:
        with open(metrics_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["epoch", "train_loss", "val_auc"])
            w.writerows(history)
    return TrainResult(cfg, best_auc, best_epoch, history, checkpoint_path)


def load_checkpoint(path: Path) -> CriticalNodeClassifier:
    blob = torch.load(path, weights_only=True)
    cfg = ModelConfig(**blob["config"])
    model = CriticalNodeClassifier(cfg)
    model.load_state_dict(blob["state_dict"])
    model.eval()
    return model


DEFAULT_SEARCH_SPACE = {
    "hidden_dims": [32, 64, 128],
    "layer_num": [2, 3, 4],
    "fc_layers": [2, 3],
    "learning_rate": [0.01, 0.001, 0.0001],
    "weight_decay": [0.01, 0.001, 0.0001],
}


def hyperparameter_search(
    train_samples: list[GraphSample],
    val_samples: list[GraphSample],
    budget: int,
    space: dict[str, list] | None = None,
    reps: int = 5,
    epochs: int | None = None,
    seed: int = 0,
) -> tuple[ModelConfig, list[tuple[ModelConfig, float]]]:
    """Sample ``budget`` configurations uniformly from ``space`` and score each
    by mean best-validation-AUC over ``reps`` seeded runs. ``budget == 0``
    returns the default configuration untried."""

    space = space or DEFAULT_SEARCH_SPACE
    if budget == 0:
        return ModelConfig(), []
    rng = random.Random(seed)
    trials: list[tuple[ModelConfig, float]] = []
    for t in range(budget):
        choice = {k: rng.choice(v) for k, v in space.items()}
        if epochs is not None:
            choice["epochs"] = epochs
        try:
            cfg = replace(ModelConfig(), **choice)
        except ValueError:
            continue
        aucs = [
            train(train_samples, val_samples, cfg, seed=seed * 1000 + t * reps + r).best_auc
            for r in range(reps)
        ]
        mean_auc = sum(aucs) / len(aucs)
        log.info("trial %d %s mean_auc %.4f", t, choice, mean_auc)
        trials.append((cfg, mean_auc))
    if not trials:
        return ModelConfig(), []
    best = max(trials, key=lambda x: x[1])
    return best[0], trials
