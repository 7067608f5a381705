"""Labeled subgraph matching with GQL-style filtering and graph-editing enumeration."""

__version__ = "0.1.0"

from .candidate_index import EdgeCandidateIndex, build_ccs, ccs_lookup
from .engine import (
    Limits,
    SearchStats,
    compute_vc,
    dge_update,
    enumerate_baseline,
    enumerate_dgee,
    enumerate_failing_set,
)
from .estimator import CandidateFilter, SubgraphMatcher
from .filtering import cfl_filter, fgql_filter, gql_filter, nlf_filter, semi_matching
from .graph import Graph, GraphFormatError, GraphValidationError, dump_graph, is_connected, load_graph, neighbors, read_graph
from .oracle import oracle_enumerate
from .ordering import MatchingOrder, ri_order
from .pipeline import PipelineConfig, run_pipeline

__all__ = [
    "CandidateFilter",
    "EdgeCandidateIndex",
    "Graph",
    "GraphFormatError",
    "GraphValidationError",
    "Limits",
    "MatchingOrder",
    "PipelineConfig",
    "SearchStats",
    "SubgraphMatcher",
    "build_ccs",
    "ccs_lookup",
    "cfl_filter",
    "compute_vc",
    "dge_update",
    "dump_graph",
    "enumerate_baseline",
    "enumerate_dgee",
    "enumerate_failing_set",
    "fgql_filter",
    "gql_filter",
    "is_connected",
    "load_graph",
    "neighbors",
    "nlf_filter",
    "oracle_enumerate",
    "read_graph",
    "ri_order",
    "run_pipeline",
    "semi_matching",
]
