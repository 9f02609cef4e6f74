"""Critical-node classifier: learns to flag nodes worth deleting first.

Trains a graph-attention network on solver-labelled corpora and emits
predicted-node files that seed the solver's initial population.
"""

from .data import GraphSample, load_corpus, load_sample, read_manifest
from .features import feature_rows, format_features
from .graphio import Graph, load_instance, parse_instance
from .model import CriticalNodeClassifier, ModelConfig, attention_mask, forward_graph
from .predict import (
    FeatureMismatchError,
    check_feature_parity,
    critical_scores,
    predict_knowledge,
    select_nodes,
)
from .train import TrainResult, hyperparameter_search, load_checkpoint, train

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphSample",
    "CriticalNodeClassifier",
    "ModelConfig",
    "TrainResult",
    "FeatureMismatchError",
    "attention_mask",
    "check_feature_parity",
    "critical_scores",
    "feature_rows",
    "format_features",
    "forward_graph",
    "hyperparameter_search",
    "load_checkpoint",
    "load_corpus",
    "load_instance",
    "load_sample",
    "parse_instance",
    "predict_knowledge",
    "read_manifest",
    "select_nodes",
    "train",
]
