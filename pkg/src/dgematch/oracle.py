"""Brute-force reference enumerator.

Deliberately independent of the filtering, index and search modules: it
checks labels, injectivity and edges directly against the data graph.
"""

from __future__ import annotations

import time

from .graph import Graph

__all__ = ["oracle_enumerate", "oracle_search"]


def oracle_search(q: Graph, G: Graph, cap: int | None = None, time_limit: float | None = None, cancel=None):
    """Enumerate embeddings in lexicographic order of ``(f(0), ..., f(n-1))``.

    Returns ``(embeddings, nodes, status)`` where ``status`` is ``"solved"``,
    ``"match-cap"`` or ``"timeout"``.
    """
    n = q.vertex_count
    data_adj = [frozenset(nb) for nb in G.adjacency]
    pool = [[v for v in range(G.vertex_count) if G.labels[v] == q.labels[u]] for u in range(n)]
    earlier = [[w for w in q.adjacency[u] if w < u] for u in range(n)]
    out: list[tuple[int, ...]] = []
    f = [-1] * n
    used: set[int] = set()
    nodes = 0
    deadline = None if time_limit is None else time.perf_counter() + time_limit
    status = "solved"

    class Done(Exception):
        pass

    def rec(u: int) -> None:
        nonlocal nodes, status
        if u == n:
            out.append(tuple(f))
            if cap is not None and len(out) >= cap:
                status = "match-cap"
                raise Done
            return
        for v in pool[u]:
            if v in used:
                continue
            if all(f[w] in data_adj[v] for w in earlier[u]):
                nodes += 1
                if nodes % 4096 == 0 and (
                    (deadline is not None and time.perf_counter() >= deadline)
                    or (cancel is not None and cancel.is_set())
                ):
                    status = "timeout"
                    raise Done
                f[u] = v
                used.add(v)
                rec(u + 1)
                used.discard(v)
        f[u] = -1

    if n == 0:
        return [], 0, status
    if cap is not None and cap <= 0:
        return [], 0, "match-cap"
    try:
        rec(0)
    except Done:
        pass
    return out, nodes, status


def oracle_enumerate(q: Graph, G: Graph, cap: int | None = None) -> list[tuple[int, ...]]:
    """All embeddings of ``q`` in ``G`` (at most ``cap``), each indexed by query vertex."""
    return oracle_search(q, G, cap)[0]
