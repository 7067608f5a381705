"""Backtracking enumeration over conditional candidate sets.

Three enumerators share one search skeleton:

* ``enumerate_baseline``: plain set-intersection DFS.
* ``enumerate_failing_set``: the same DFS with failing-set backjumping, using
  ancestors fixed by the query edges.
* ``enumerate_dgee``: failing-set backjumping where each level's ancestors
  come from dynamic graph editing. A backward edge whose conditional
  candidate set leaves the running valid-candidate set unchanged is dropped,
  and every candidate removed because another query vertex already uses it
  adds an edge to that vertex.

The search reads only the matching order, the candidate sets and the
:class:`~dgematch.candidate_index.EdgeCandidateIndex`; nothing here touches
the data graph.

Ancestors and failing sets are bitsets (Python ints) over matching-order
positions: bit ``k`` stands for ``order[k]``.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from ._intersect import intersect_sorted
from .candidate_index import EdgeCandidateIndex
from .ordering import MatchingOrder

__all__ = [
    "Limits",
    "SearchStats",
    "SearchState",
    "DGEUpdate",
    "SOLVED",
    "MATCH_CAP",
    "TIMEOUT",
    "DEFAULT_MAX_MATCHES",
    "DEFAULT_TIME_LIMIT",
    "compute_vc",
    "dge_update",
    "enumerate_baseline",
    "enumerate_failing_set",
    "enumerate_dgee",
    "ENGINES",
]

SOLVED = "solved"
MATCH_CAP = "match-cap"
TIMEOUT = "timeout"

DEFAULT_MAX_MATCHES = 100_000
DEFAULT_TIME_LIMIT = 300.0
CHECK_INTERVAL = 4096

Sink = Callable[[tuple[int, ...]], None]


@dataclass
class Limits:
    """Stopping rules. ``None`` disables a limit.

    ``cancel`` may be set from another thread; it is polled together with the
    clock every ``CHECK_INTERVAL`` search nodes and reported as a timeout.
    """

    max_matches: int | None = DEFAULT_MAX_MATCHES
    time_limit: float | None = DEFAULT_TIME_LIMIT
    cancel: threading.Event | None = None


@dataclass
class SearchStats:
    embeddings_found: int = 0
    search_nodes: int = 0
    intersections: int = 0
    elapsed: float = 0.0
    status: str = SOLVED


class _Stop(Exception):
    pass


class _Level(NamedTuple):
    vertex: int
    candidates: tuple[int, ...]
    rank_of: dict[int, int]
    # (backward position j, CCS lists of edge (order[j], order[k]) indexed by rank)
    backward: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]


@dataclass
class SearchState:
    """Mutable state of one search.

    ``mapping[k]`` is the data vertex assigned at position ``k`` (-1 when
    unassigned) and ``ranks[k]`` its index in ``C(order[k])``. ``owner`` maps
    each used data vertex to the position using it. ``ancestors[k]`` is the
    ancestor bitset of position ``k`` for the current branch.
    """

    levels: tuple[_Level, ...]
    mapping: list[int]
    ranks: list[int]
    owner: dict[int, int]
    ancestors: list[int]
    vc_stack: list[tuple[int, ...]]
    stats: SearchStats = field(default_factory=SearchStats)

    @classmethod
    def new(cls, idx: EdgeCandidateIndex, order: MatchingOrder) -> "SearchState":
        levels = []
        for k, u in enumerate(order.order):
            back = tuple((j, idx.lists[(order.order[j], u)]) for j in order.backward_neighbors[k])
            levels.append(_Level(u, idx.candidates[u], idx.rank_of[u], back))
        n = len(levels)
        return cls(
            levels=tuple(levels),
            mapping=[-1] * n,
            ranks=[-1] * n,
            owner={},
            ancestors=[0] * n,
            vc_stack=[()] * n,
        )

    def assign(self, k: int, v: int) -> None:
        self.mapping[k] = v
        self.ranks[k] = self.levels[k].rank_of[v]
        self.owner[v] = k

    def unassign(self, k: int) -> None:
        del self.owner[self.mapping[k]]
        self.mapping[k] = -1
        self.ranks[k] = -1

    def embedding(self) -> tuple[int, ...]:
        """Current full mapping, indexed by query vertex id."""
        out = [0] * len(self.levels)
        for lvl, v in zip(self.levels, self.mapping):
            out[lvl.vertex] = v
        return tuple(out)


class DGEUpdate(NamedTuple):
    """Outcome of editing one level.

    ``kept`` holds the backward positions whose edge shrank the valid
    candidate set, ``dropped`` those whose edge was deleted, ``added`` the
    positions whose used data vertex was removed from the set (one entry per
    removed vertex).
    """

    vc: tuple[int, ...]
    ancestors: int
    kept: tuple[int, ...]
    dropped: tuple[int, ...]
    added: tuple[int, ...]


def compute_vc(idx: EdgeCandidateIndex, order: MatchingOrder, state: SearchState, k: int) -> tuple[int, ...]:
    """Intersection of the conditional candidate sets of position ``k``'s assigned neighbors.

    Level 0 and positions without backward neighbors get ``C(order[k])``.
    Lists are folded shortest first.
    """
    level = state.levels[k]
    if not level.backward:
        return level.candidates
    ranks = state.ranks
    lists = sorted((per_rank[ranks[j]] for j, per_rank in level.backward), key=len)
    vc = lists[0]
    for other in lists[1:]:
        if not vc:
            break
        vc = intersect_sorted(vc, other)
        state.stats.intersections += 1
    return tuple(vc)


def dge_update(idx: EdgeCandidateIndex, order: MatchingOrder, state: SearchState, k: int) -> DGEUpdate:
    """Valid candidates and edited-graph ancestors for position ``k``.

    Backward neighbors are folded in matching order starting from
    ``C(order[k])``; an edge contributes its ancestors only when its
    intersection strictly shrinks the running set. Candidates already used by
    position ``p`` are then removed, each removal merging ``ancestors[p]``.
    Stores the result in ``state.ancestors[k]``.
    """
    level = state.levels[k]
    ranks = state.ranks
    anc = state.ancestors
    a = 1 << k
    vc = level.candidates
    kept = []
    dropped = []
    first = True
    for j, per_rank in level.backward:
        if not vc:
            dropped.append(j)
            continue
        ccs = per_rank[ranks[j]]
        if first:
            # every CCS of u is a subset of C(u)
            new = ccs
            first = False
        else:
            new = intersect_sorted(vc, ccs)
            state.stats.intersections += 1
        if len(new) < len(vc):
            a |= anc[j]
            kept.append(j)
        else:
            dropped.append(j)
        vc = new
    owner = state.owner
    added = []
    if owner:
        free = []
        for v in vc:
            p = owner.get(v)
            if p is None:
                free.append(v)
            else:
                a |= anc[p]
                added.append(p)
        vc = free
    anc[k] = a
    return DGEUpdate(tuple(vc), a, tuple(kept), tuple(dropped), tuple(added))


def _static_ancestors(order: MatchingOrder) -> list[int]:
    anc = []
    for k, back in enumerate(order.backward_neighbors):
        a = 1 << k
        for j in back:
            a |= anc[j]
        anc.append(a)
    return anc


class _Runner:
    """Shared driver: limits, node accounting and embedding emission."""

    def __init__(self, idx, order, limits: Limits | None, sink: Sink | None):
        self.idx = idx
        self.order = order
        self.limits = limits or Limits()
        self.state = SearchState.new(idx, order)
        self.stats = self.state.stats
        self.n = len(order)
        self.full = (1 << self.n) - 1
        self.found: list[tuple[int, ...]] = []
        self.sink = sink if sink is not None else self.found.append
        cap = self.limits.max_matches
        self.cap = cap if cap is not None else -1
        self.deadline = None
        self.next_check = CHECK_INTERVAL

    def node(self) -> None:
        stats = self.stats
        stats.search_nodes += 1
        if stats.search_nodes >= self.next_check:
            self.next_check += CHECK_INTERVAL
            self.poll()

    def poll(self) -> None:
        cancel = self.limits.cancel
        if (self.deadline is not None and time.perf_counter() >= self.deadline) or (
            cancel is not None and cancel.is_set()
        ):
            self.stats.status = TIMEOUT
            raise _Stop

    def emit(self) -> None:
        stats = self.stats
        self.sink(self.state.embedding())
        stats.embeddings_found += 1
        if stats.embeddings_found == self.cap:
            stats.status = MATCH_CAP
            raise _Stop

    def run(self, search) -> tuple[list[tuple[int, ...]], SearchStats]:
        start = time.perf_counter()
        if self.limits.time_limit is not None:
            self.deadline = start + self.limits.time_limit
        try:
            if self.n and self.cap != 0:
                self.poll()
                search(0)
            elif self.cap == 0:
                self.stats.status = MATCH_CAP
        except _Stop:
            pass
        self.stats.elapsed = time.perf_counter() - start
        return self.found, self.stats


def enumerate_baseline(q, idx, order, cands=None, limits: Limits | None = None, sink: Sink | None = None):
    """Enumerate every embedding with plain set-intersection backtracking.

    Returns ``(embeddings, stats)``. Embeddings are tuples indexed by query
    vertex. When ``sink`` is given each embedding is passed to it instead of
    being collected, and the returned list is empty.
    """
    r = _Runner(idx, order, limits, sink)
    state, n = r.state, r.n
    owner = state.owner

    def search(k: int) -> None:
        if k == n:
            r.emit()
            return
        vc = compute_vc(idx, order, state, k)
        state.vc_stack[k] = vc
        for v in vc:
            if v in owner:
                continue
            r.node()
            state.assign(k, v)
            search(k + 1)
            state.unassign(k)

    return r.run(search)


def enumerate_failing_set(q, idx, order, cands=None, limits: Limits | None = None, sink: Sink | None = None):
    """Backtracking with failing-set backjumping over the unedited query.

    A dead end (empty valid-candidate set) at position ``k`` fails with
    ``ancestors[k]``; a candidate already used by position ``p`` contributes
    ``ancestors[p] | ancestors[k]``; a found embedding yields every position.
    When a child's failing set misses the current position, the remaining
    siblings cannot succeed and the set is returned immediately.
    """
    r = _Runner(idx, order, limits, sink)
    state, n, full = r.state, r.n, r.full
    owner = state.owner
    anc = _static_ancestors(order)
    state.ancestors[:] = anc

    def search(k: int) -> int:
        if k == n:
            r.emit()
            return full
        vc = compute_vc(idx, order, state, k)
        if not vc:
            return anc[k]
        state.vc_stack[k] = vc
        bit = 1 << k
        fs = 0
        for v in vc:
            p = owner.get(v)
            if p is not None:
                fs |= anc[p] | anc[k]
                continue
            r.node()
            state.assign(k, v)
            child = search(k + 1)
            state.unassign(k)
            if not child & bit:
                return child
            fs |= child
        return fs

    return r.run(search)


def enumerate_dgee(q, idx, order, cands=None, limits: Limits | None = None, sink: Sink | None = None):
    """Failing-set backtracking driven by dynamic graph editing.

    Each level's valid candidates and ancestors come from :func:`dge_update`,
    which already excludes used data vertices, so no separate injectivity
    test is needed in the loop.
    """
    r = _Runner(idx, order, limits, sink)
    state, n, full = r.state, r.n, r.full

    def search(k: int) -> int:
        if k == n:
            r.emit()
            return full
        upd = dge_update(idx, order, state, k)
        vc = upd.vc
        if not vc:
            return upd.ancestors
        state.vc_stack[k] = vc
        bit = 1 << k
        fs = 0
        for v in vc:
            r.node()
            state.assign(k, v)
            child = search(k + 1)
            state.unassign(k)
            if not child & bit:
                return child
            fs |= child
        return fs

    return r.run(search)


ENGINES = {
    "baseline": enumerate_baseline,
    "fs": enumerate_failing_set,
    "dgee": enumerate_dgee,
}
