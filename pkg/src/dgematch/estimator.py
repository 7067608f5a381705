"""scikit-learn style front end.

``fit`` takes the data graph; queries are passed to ``predict``/``match``.

>>> from dgematch import Graph, SubgraphMatcher
>>> tri = Graph.from_edges([0, 0, 0], [(0, 1), (1, 2), (0, 2)])
>>> SubgraphMatcher().fit(tri).count(tri)
6
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .engine import DEFAULT_MAX_MATCHES, DEFAULT_TIME_LIMIT
from .filtering import CandidateSets, average_candidates, compute_candidates
from .pipeline import PipelineConfig, PipelineResult, run_pipeline
from .validation import check_graph, check_query

__all__ = ["SubgraphMatcher", "CandidateFilter"]


class SubgraphMatcher(BaseEstimator):
    """Enumerate embeddings of query graphs in a fitted data graph.

    Parameters
    ----------
    filter : {"nlf", "gql", "fgql", "cfl"}
        Static candidate filter.
    engine : {"baseline", "fs", "dgee", "oracle"}
        Enumerator.
    max_matches : int or None
        Stop after this many embeddings.
    time_limit : float or None
        Per-query budget in seconds.
    """

    def __init__(self, filter="fgql", engine="dgee", max_matches=DEFAULT_MAX_MATCHES, time_limit=DEFAULT_TIME_LIMIT):
        self.filter = filter
        self.engine = engine
        self.max_matches = max_matches
        self.time_limit = time_limit

    def _config(self, **kw) -> PipelineConfig:
        return PipelineConfig(
            filter=self.filter, engine=self.engine, max_matches=self.max_matches, time_limit=self.time_limit, **kw
        )

    def fit(self, X, y=None):
        self._config()  # rejects unknown filter/engine names early
        self.data_graph_ = check_graph(X, "data graph")
        self.n_vertices_ = self.data_graph_.vertex_count
        return self

    def match(self, q, sink=None) -> PipelineResult:
        check_is_fitted(self, "data_graph_")
        return run_pipeline(check_query(q), self.data_graph_, self._config(), sink=sink)

    def predict(self, q) -> list[tuple[int, ...]]:
        """Embeddings of ``q``; each is a tuple indexed by query vertex."""
        return self.match(q).embeddings

    def count(self, q) -> int:
        check_is_fitted(self, "data_graph_")
        res = run_pipeline(check_query(q), self.data_graph_, self._config(collect=False))
        return res.stats.embeddings_found

    def transform(self, queries) -> np.ndarray:
        """One row per query: embeddings found, search nodes, mean candidate-set size."""
        rows = []
        for q in queries:
            res = self.match(q, sink=lambda emb: None)
            rows.append((res.stats.embeddings_found, res.stats.search_nodes, average_candidates(res.candidates)))
        return np.asarray(rows, dtype=float).reshape(-1, 3)


class CandidateFilter(TransformerMixin, BaseEstimator):
    """Static filtering only: ``transform(q)`` returns the candidate sets of ``q``."""

    def __init__(self, method="fgql"):
        self.method = method

    def fit(self, X, y=None):
        self.data_graph_ = check_graph(X, "data graph")
        return self

    def transform(self, q) -> CandidateSets:
        check_is_fitted(self, "data_graph_")
        return compute_candidates(check_graph(q, "query"), self.data_graph_, self.method)
