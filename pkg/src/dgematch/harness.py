"""Per-query runs, query-set runs and their CSV/summary output."""

from __future__ import annotations

import csv
import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

from .engine import MATCH_CAP, SOLVED, TIMEOUT
from .filtering import average_candidates
from .graph import Graph, read_graph
from .pipeline import PipelineConfig, run_pipeline

__all__ = ["RunRecord", "Summary", "CSV_HEADER", "run_query", "run_single", "run_suite", "summarize", "write_csv"]

log = logging.getLogger(__name__)

ERROR = "error"
CSV_HEADER = [
    "dataset",
    "query",
    "filter",
    "engine",
    "avg_candidates",
    "search_nodes",
    "embeddings",
    "filter_ms",
    "order_ms",
    "enum_ms",
    "total_ms",
    "status",
]


@dataclass
class RunRecord:
    dataset: str
    query: str
    filter: str
    engine: str
    avg_candidates: float
    search_nodes: int
    embeddings: int
    filter_ms: float
    order_ms: float
    enum_ms: float
    total_ms: float
    status: str

    def row(self) -> list[str]:
        d = asdict(self)
        d["avg_candidates"] = f"{self.avg_candidates:.6f}"
        for k in ("filter_ms", "order_ms", "enum_ms", "total_ms"):
            d[k] = f"{d[k]:.3f}"
        return [str(d[k]) for k in CSV_HEADER]


@dataclass
class Summary:
    queries: int
    unsolved: int
    avg_candidates: float
    mean_total_ms: float

    def lines(self) -> list[str]:
        return [
            f"queries={self.queries}",
            f"unsolved={self.unsolved}",
            f"avg_candidates={self.avg_candidates:.6f}",
            f"mean_total_ms={self.mean_total_ms:.3f}",
        ]


def run_query(G: Graph, q: Graph, config: PipelineConfig, dataset: str = "", query: str = "", sink=None) -> RunRecord:
    res = run_pipeline(q, G, config, sink=sink)
    t = res.timings
    return RunRecord(
        dataset=dataset,
        query=query,
        filter=config.filter,
        engine=config.engine,
        avg_candidates=average_candidates(res.candidates),
        search_nodes=res.stats.search_nodes,
        embeddings=res.stats.embeddings_found,
        filter_ms=t["filter"] * 1e3,
        order_ms=t["order"] * 1e3,
        enum_ms=t["enumerate"] * 1e3,
        total_ms=t["total"] * 1e3,
        status=res.stats.status,
    )


def run_single(data_path, query_path, config: PipelineConfig, dump=None) -> RunRecord:
    """Run one query file against one data file.

    With ``dump`` set, embeddings are written one per line as the data
    vertices assigned to query vertices ``0..n-1``. Errors propagate.
    """
    G = read_graph(data_path)
    q = read_graph(query_path)
    if dump is None:
        cfg = replace(config, collect=False)
        return run_query(G, q, cfg, Path(data_path).stem, Path(query_path).stem)
    with open(dump, "w", encoding="ascii") as fh:

        def write(emb):
            fh.write(" ".join(map(str, emb)) + "\n")

        return run_query(G, q, config, Path(data_path).stem, Path(query_path).stem, sink=write)


def _failed(dataset: str, query: str, config: PipelineConfig, exc: Exception) -> RunRecord:
    log.warning("query %s failed: %s", query, exc)
    return RunRecord(dataset, query, config.filter, config.engine, 0.0, 0, 0, 0.0, 0.0, 0.0, 0.0, ERROR)


def run_suite(data_path, query_dir, config: PipelineConfig, workers: int = 1) -> tuple[list[RunRecord], "Summary"]:
    """Run every ``*.graph`` file in ``query_dir`` (sorted by name).

    Queries run on a thread pool sharing the data graph; a failing query is
    recorded with status ``error`` and does not stop the suite.
    """
    G = read_graph(data_path)
    dataset = Path(data_path).stem
    cfg = replace(config, collect=False)
    paths = sorted(Path(query_dir).glob("*.graph"))

    def one(path: Path) -> RunRecord:
        try:
            q = read_graph(path)
            rec = run_query(G, q, cfg, dataset, path.stem)
        except Exception as exc:  # recorded, never fatal for the suite
            return _failed(dataset, path.stem, cfg, exc)
        log.info("%s: %s embeddings=%d nodes=%d", path.stem, rec.status, rec.embeddings, rec.search_nodes)
        return rec

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, paths))
    else:
        records = [one(p) for p in paths]
    return records, summarize(records, config.time_limit)


def summarize(records: list[RunRecord], time_limit: float | None) -> Summary:
    """Aggregate in the reporting convention of the benchmark suites.

    Timed-out and failed queries count as unsolved; a query stopped at the
    match cap counts as solved. Timed-out queries enter the mean elapsed time
    at exactly the time budget.
    """
    if not records:
        return Summary(0, 0, 0.0, 0.0)
    unsolved = sum(r.status in (TIMEOUT, ERROR) for r in records)
    budget_ms = time_limit * 1e3 if time_limit is not None else None

    def charged(r: RunRecord) -> float:
        if r.status == TIMEOUT and budget_ms is not None:
            return budget_ms
        return r.total_ms

    ok = [r for r in records if r.status != ERROR]
    avg_c = sum(r.avg_candidates for r in ok) / len(ok) if ok else 0.0
    mean_ms = sum(charged(r) for r in records) / len(records)
    return Summary(len(records), unsolved, avg_c, mean_ms)


def write_csv(records: list[RunRecord], fh=None) -> str:
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue() if fh is None else ""


STATUSES = (SOLVED, MATCH_CAP, TIMEOUT, ERROR)
