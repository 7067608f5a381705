"""Input coercion for the estimator API."""

from __future__ import annotations

import os

from .graph import Graph, is_connected, load_graph, read_graph
from .ordering import DisconnectedQueryError

__all__ = ["check_graph", "check_query"]


def check_graph(X, name: str = "graph") -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, graph-file text, a path to a graph file, or a
    networkx-style graph (anything with ``nodes`` and ``edges``; vertex labels
    are read from the ``label`` node attribute).
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, os.PathLike):
        return read_graph(X)
    if isinstance(X, str):
        if "\n" in X or X.lstrip().startswith("t "):
            return load_graph(X)
        return read_graph(X)
    if hasattr(X, "nodes") and hasattr(X, "edges"):
        return Graph.from_networkx(X)
    raise TypeError(f"{name} must be a Graph, graph-file text, a path, or a networkx graph; got {type(X).__name__}")


def check_query(q) -> Graph:
    q = check_graph(q, "query")
    if q.vertex_count == 0:
        raise ValueError("query graph has no vertices")
    if not is_connected(q):
        raise DisconnectedQueryError("query graph is not connected")
    return q
