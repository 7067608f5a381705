"""Static candidate filtering: NLF, GQL semi-matching refinement, fGQL, and CFL.

Every filter returns a ``CandidateSets`` (one ascending tuple of data
vertices per query vertex). GQL and fGQL compute the same greatest fixpoint;
fGQL gets there with a neighborhood work queue and a cached-assignment
pre-check that skips most bipartite matchings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .graph import Graph

__all__ = [
    "CandidateSets",
    "FilterStats",
    "FILTERS",
    "nlf_filter",
    "semi_matching",
    "gql_filter",
    "fgql_filter",
    "cfl_filter",
    "compute_candidates",
    "average_candidates",
]

CandidateSets = tuple[tuple[int, ...], ...]


@dataclass
class FilterStats:
    """Work counters for one filter invocation."""

    semi_matching_calls: int = 0
    precheck_hits: int = 0
    passes: int = 0
    removed: int = 0


def nlf_filter(q: Graph, G: Graph) -> CandidateSets:
    """Label equality plus per-label neighbor-frequency dominance."""
    sets = []
    for u in range(q.vertex_count):
        need = q.nlf_table[u]
        deg = q.degree(u)
        keep = []
        for v in G.label_index.get(q.labels[u], ()):
            if G.degree(v) < deg:
                continue
            have = G.nlf_table[v]
            if all(have.get(lab, 0) >= cnt for lab, cnt in need.items()):
                keep.append(v)
        sets.append(tuple(keep))
    return tuple(sets)


def semi_matching(
    left: Sequence,
    right: Sequence,
    edge_test: Callable[[object, object], bool],
    initial: Mapping | None = None,
) -> tuple[bool, dict | None]:
    """Decide whether the bipartite graph admits a matching saturating ``left``.

    Uses augmenting paths (Kuhn). ``initial`` may hold a partial assignment to
    start from; pairs that are not edges or collide on the right side are
    dropped. Returns ``(True, assignment)`` with ``assignment`` mapping every
    left vertex to a distinct right vertex, or ``(False, None)``.
    """
    if len(left) > len(right):
        return False, None
    adj = [[j for j, r in enumerate(right) if edge_test(l, r)] for l in left]
    if any(not row for row in adj):
        return False, None
    right_pos = {r: j for j, r in enumerate(right)}
    match_l = [-1] * len(left)
    match_r = [-1] * len(right)
    if initial:
        for i, l in enumerate(left):
            r = initial.get(l)
            j = right_pos.get(r, -1) if r is not None else -1
            if j >= 0 and match_r[j] < 0 and j in adj[i]:
                match_l[i] = j
                match_r[j] = i

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_r[j] < 0 or augment(match_r[j], seen):
                match_l[i] = j
                match_r[j] = i
                return True
        return False

    # most constrained left vertices first
    for i in sorted(range(len(left)), key=lambda i: len(adj[i])):
        if match_l[i] < 0 and not augment(i, [False] * len(right)):
            return False, None
    return True, {l: right[match_l[i]] for i, l in enumerate(left)}


def _bipartite_ok(q: Graph, G: Graph, member: list[set[int]], u: int, v: int, initial=None):
    return semi_matching(
        q.adjacency[u],
        G.adjacency[v],
        lambda un, vn: vn in member[un],
        initial,
    )


def gql_filter(q: Graph, G: Graph, init: CandidateSets, stats: FilterStats | None = None) -> CandidateSets:
    """Refine ``init`` with full GQL passes until a pass removes nothing."""
    stats = stats if stats is not None else FilterStats()
    member = [set(c) for c in init]
    changed = True
    while changed:
        changed = False
        stats.passes += 1
        for u in range(q.vertex_count):
            for v in sorted(member[u]):
                stats.semi_matching_calls += 1
                ok, _ = _bipartite_ok(q, G, member, u, v)
                if not ok:
                    member[u].discard(v)
                    stats.removed += 1
                    changed = True
    return tuple(tuple(sorted(s)) for s in member)


def fgql_filter(q: Graph, G: Graph, init: CandidateSets, stats: FilterStats | None = None) -> CandidateSets:
    """GQL fixpoint computed with neighborhood updates and a matching pre-check.

    Only ``u`` and its query neighbors are re-queued after ``C(u)`` shrinks,
    and a ``(u, v)`` pair whose last stored neighbor assignment is still
    inside the current candidate sets skips the bipartite matching entirely.
    """
    stats = stats if stats is not None else FilterStats()
    n = q.vertex_count
    member = [set(c) for c in init]
    # cache[u][rank of v in init[u]] -> {u_n: v_n} from the last successful matching
    cache: list[list[dict | None]] = [[None] * len(c) for c in init]
    queue = deque(range(n))
    pending = [True] * n
    while queue:
        u = queue.popleft()
        pending[u] = False
        stats.passes += 1
        updated = False
        row = cache[u]
        for rank, v in enumerate(init[u]):
            if v not in member[u]:
                continue
            last = row[rank]
            if last is not None and all(vn in member[un] for un, vn in last.items()):
                stats.precheck_hits += 1
                continue
            stats.semi_matching_calls += 1
            ok, assignment = _bipartite_ok(q, G, member, u, v, last)
            if ok:
                row[rank] = assignment
                continue
            member[u].discard(v)
            row[rank] = None
            stats.removed += 1
            if not updated:
                updated = True
                for w in (u, *q.adjacency[u]):
                    if not pending[w]:
                        pending[w] = True
                        queue.append(w)
    return tuple(tuple(sorted(s)) for s in member)


def cfl_filter(
    q: Graph, G: Graph, init: CandidateSets, rounds: int = 1, stats: FilterStats | None = None
) -> CandidateSets:
    """Keep ``v`` in ``C(u)`` iff every query neighbor has a candidate adjacent to ``v``.

    Each round evaluates the rule against the sets as they stood at the start
    of the round.
    """
    stats = stats if stats is not None else FilterStats()
    sets = [tuple(c) for c in init]
    for _ in range(rounds):
        stats.passes += 1
        member = [set(c) for c in sets]
        new = []
        for u in range(q.vertex_count):
            nbrs_u = q.adjacency[u]
            keep = []
            for v in sets[u]:
                adj_v = G.adjacency[v]
                if all(any(w in member[un] for w in adj_v) for un in nbrs_u):
                    keep.append(v)
                else:
                    stats.removed += 1
            new.append(tuple(keep))
        if new == sets:
            break
        sets = new
    return tuple(sets)


FILTERS: dict[str, Callable] = {
    "nlf": lambda q, G, init, stats=None: init,
    "gql": gql_filter,
    "fgql": fgql_filter,
    "cfl": cfl_filter,
}


def compute_candidates(q: Graph, G: Graph, method: str = "fgql", stats: FilterStats | None = None) -> CandidateSets:
    """NLF followed by the named refinement (``nlf`` applies no refinement)."""
    try:
        refine = FILTERS[method]
    except KeyError:
        raise ValueError(f"unknown filter {method!r}; expected one of {sorted(FILTERS)}") from None
    return refine(q, G, nlf_filter(q, G), stats=stats)


def average_candidates(cands: CandidateSets) -> float:
    """Mean candidate-set size over the query vertices."""
    if not cands:
        return 0.0
    return sum(len(c) for c in cands) / len(cands)
