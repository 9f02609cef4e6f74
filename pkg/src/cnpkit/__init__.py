"""Toolkit for critical-node detection by pairwise-connectivity minimization."""

from .features import FeatureMatrix, feature_matrix
from .ga import GAConfig, Population, SolveResult, cross, solve
from .graph import (
    ComponentPartition,
    Graph,
    InstanceParseError,
    Solution,
    best_removal,
    components,
    find_cut_nodes,
    graph_from_edges,
    load_instance,
    node_removal_connectivity,
    pairwise_connectivity,
    parse_instance,
)
from .knowledge import KnowledgeSet, compute_k, read_knowledge, write_knowledge
from .search import LocalSearchConfig, PriorityTable, improve, select_large_component

__all__ = [
    "ComponentPartition",
    "FeatureMatrix",
    "GAConfig",
    "Graph",
    "InstanceParseError",
    "KnowledgeSet",
    "LocalSearchConfig",
    "Population",
    "PriorityTable",
    "Solution",
    "SolveResult",
    "best_removal",
    "components",
    "compute_k",
    "cross",
    "feature_matrix",
    "find_cut_nodes",
    "graph_from_edges",
    "improve",
    "load_instance",
    "node_removal_connectivity",
    "pairwise_connectivity",
    "parse_instance",
    "read_knowledge",
    "select_large_component",
    "solve",
    "write_knowledge",
]

__version__ = "0.1.0"
