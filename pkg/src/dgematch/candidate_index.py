"""Conditional candidate sets: ``C(u) ∩ N(v_n)`` for every query edge and candidate.

Once built, the index together with the candidate sets and the query graph is
all the search needs; the data graph can be dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._intersect import intersect_sorted
from .filtering import CandidateSets
from .graph import Graph

__all__ = ["EdgeCandidateIndex", "build_ccs", "ccs_lookup"]


@dataclass(frozen=True, eq=False)
class EdgeCandidateIndex:
    """Per ordered query edge ``(u_n, u)``, one tuple per candidate of ``u_n``.

    ``lists[(u_n, u)][rank]`` holds ``C(u) ∩ N(v_n)`` where ``v_n`` is the
    ``rank``-th entry of ``C(u_n)``. ``rank_of[u_n]`` maps a data vertex to
    that rank.
    """

    candidates: CandidateSets
    rank_of: tuple[dict[int, int], ...]
    lists: dict[tuple[int, int], tuple[tuple[int, ...], ...]]

    @property
    def total_entries(self) -> int:
        return sum(len(x) for per_edge in self.lists.values() for x in per_edge)

    def lookup(self, u_n: int, u: int, v_n: int) -> tuple[int, ...]:
        return ccs_lookup(self, u_n, u, v_n)


def build_ccs(q: Graph, G: Graph, cands: CandidateSets) -> EdgeCandidateIndex:
    """Materialize both orientations of every query edge by sorted merge."""
    rank_of = tuple({v: i for i, v in enumerate(c)} for c in cands)
    lists = {}
    for u_n in range(q.vertex_count):
        for u in q.adjacency[u_n]:
            target = cands[u]
            lists[(u_n, u)] = tuple(tuple(intersect_sorted(target, G.adjacency[v_n])) for v_n in cands[u_n])
    return EdgeCandidateIndex(candidates=tuple(tuple(c) for c in cands), rank_of=rank_of, lists=lists)


def ccs_lookup(idx: EdgeCandidateIndex, u_n: int, u: int, v_n: int) -> tuple[int, ...]:
    try:
        per_edge = idx.lists[(u_n, u)]
    except KeyError:
        raise KeyError(f"({u_n}, {u}) is not a query edge") from None
    try:
        return per_edge[idx.rank_of[u_n][v_n]]
    except KeyError:
        raise KeyError(f"data vertex {v_n} is not a candidate of query vertex {u_n}") from None
