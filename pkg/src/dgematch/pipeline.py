"""Filter, order, enumerate."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .candidate_index import build_ccs
from .engine import ENGINES, SOLVED, Limits, SearchStats, DEFAULT_MAX_MATCHES, DEFAULT_TIME_LIMIT
from .filtering import FILTERS, CandidateSets, FilterStats, cfl_filter, nlf_filter
from .graph import Graph
from .oracle import oracle_search
from .ordering import MatchingOrder, ri_order

__all__ = ["PipelineConfig", "PipelineResult", "run_pipeline", "ENGINE_NAMES", "FILTER_NAMES"]

ENGINE_NAMES = ("baseline", "fs", "dgee", "oracle")
FILTER_NAMES = ("nlf", "gql", "fgql", "cfl")


@dataclass
class PipelineConfig:
    filter: str = "fgql"
    engine: str = "dgee"
    max_matches: int | None = DEFAULT_MAX_MATCHES
    time_limit: float | None = DEFAULT_TIME_LIMIT
    cfl_rounds: int = 1
    collect: bool = True
    cancel: object = None

    def __post_init__(self):
        if self.filter not in FILTER_NAMES:
            raise ValueError(f"unknown filter {self.filter!r}; expected one of {FILTER_NAMES}")
        if self.engine not in ENGINE_NAMES:
            raise ValueError(f"unknown engine {self.engine!r}; expected one of {ENGINE_NAMES}")


@dataclass
class PipelineResult:
    embeddings: list[tuple[int, ...]]
    stats: SearchStats
    candidates: CandidateSets
    order: MatchingOrder
    timings: dict[str, float] = field(default_factory=dict)
    filter_stats: FilterStats | None = None


def _filter(q, G, config, fstats):
    init = nlf_filter(q, G)
    if config.filter == "nlf":
        return init
    if config.filter == "cfl":
        return cfl_filter(q, G, init, rounds=config.cfl_rounds, stats=fstats)
    return FILTERS[config.filter](q, G, init, stats=fstats)


def run_pipeline(q: Graph, G: Graph, config: PipelineConfig | None = None, sink=None) -> PipelineResult:
    """Run the three stages and time each one (seconds).

    The time budget covers the whole run; enumeration gets whatever is left
    after filtering and ordering. An empty candidate set ends the run as
    solved with no search.
    """
    config = config or PipelineConfig()
    t0 = time.perf_counter()
    fstats = FilterStats()
    cands = _filter(q, G, config, fstats)
    empty = any(not c for c in cands)
    # the conditional candidate sets are part of preprocessing
    idx = None if empty or config.engine == "oracle" else build_ccs(q, G, cands)
    t1 = time.perf_counter()
    order = ri_order(q)
    t2 = time.perf_counter()

    remaining = None
    if config.time_limit is not None:
        remaining = max(0.0, config.time_limit - (t2 - t0))
    limits = Limits(max_matches=config.max_matches, time_limit=remaining, cancel=config.cancel)
    collected: list = []
    emit = sink if sink is not None else (collected.append if config.collect else (lambda emb: None))

    if empty:
        stats = SearchStats(status=SOLVED)
    elif config.engine == "oracle":
        embs, nodes, status = oracle_search(q, G, config.max_matches, remaining, config.cancel)
        for e in embs:
            emit(e)
        stats = SearchStats(embeddings_found=len(embs), search_nodes=nodes, status=status)
    else:
        _, stats = ENGINES[config.engine](q, idx, order, cands, limits, emit)
    t3 = time.perf_counter()
    stats.elapsed = t3 - t2
    timings = {"filter": t1 - t0, "order": t2 - t1, "enumerate": t3 - t2, "total": t3 - t0}
    return PipelineResult(collected, stats, cands, order, timings, fstats)
