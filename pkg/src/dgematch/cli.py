"""``match`` command line.

    match --data G.graph --query q.graph [--dump emb.txt]     one query, one CSV row
    match --data G.graph --query queries/ --out runs.csv      a query set plus summary
    match --data G.graph --seed 3                              seeded queries extracted from G
    match gen --seed 1 --out-dir work/ ...                     write a synthetic workload
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
import tempfile
from pathlib import Path

from . import __version__
from .engine import DEFAULT_MAX_MATCHES, DEFAULT_TIME_LIMIT
from .generate import GenParams, extract_query, gen_instances, query_filename
from .graph import GraphFormatError, GraphValidationError, read_graph, write_graph
from .harness import run_single, run_suite, write_csv
from .ordering import DisconnectedQueryError
from .pipeline import ENGINE_NAMES, FILTER_NAMES, PipelineConfig

log = logging.getLogger("dgematch")


def _setup_logging() -> None:
    level = os.environ.get("MATCH_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def _match_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="match", description="Labeled subgraph matching.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--data", required=True, help="data graph file")
    p.add_argument("--query", help="query graph file or directory of *.graph files")
    p.add_argument("--filter", choices=FILTER_NAMES, default="fgql")
    p.add_argument("--engine", choices=ENGINE_NAMES, default="dgee")
    p.add_argument("--max-matches", type=int, default=DEFAULT_MAX_MATCHES)
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, help="seconds per query")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--dump", help="write embeddings of a single query to this file")
    p.add_argument("--seed", type=int, help="without --query: extract a seeded query set from the data graph")
    p.add_argument("--num-queries", type=int, default=10, help="queries extracted with --seed")
    p.add_argument("--query-size", type=int, default=8, help="vertices per query extracted with --seed")
    return p


def _gen_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="match gen", description="Write a seeded synthetic workload.")
    d = GenParams()
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--data-vertices", type=int, default=d.data_vertices)
    p.add_argument("--data-density", type=float, default=d.data_density)
    p.add_argument("--labels", type=int, default=d.labels)
    p.add_argument("--communities", type=int, default=d.communities)
    p.add_argument("--cross-density", type=float, default=d.cross_density)
    p.add_argument("--query-vertices", type=int, default=d.query_vertices)
    p.add_argument("--query-density", type=float, default=None)
    p.add_argument("--num-queries", type=int, default=d.num_queries)
    p.add_argument("--independent", action="store_true", help="random queries instead of extracted subgraphs")
    return p


def _gen(argv) -> int:
    args = _gen_parser().parse_args(argv)
    params = GenParams(
        data_vertices=args.data_vertices,
        data_density=args.data_density,
        labels=args.labels,
        communities=args.communities,
        cross_density=args.cross_density,
        query_vertices=args.query_vertices,
        query_density=args.query_density,
        num_queries=args.num_queries,
        extract=not args.independent,
    )
    try:
        paths = gen_instances(args.seed, params, args.out_dir)
    except ValueError as exc:
        print(f"match gen: error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


def _emit_suite(records, summary, out) -> None:
    if out:
        with open(out, "w", encoding="ascii", newline="") as fh:
            write_csv(records, fh)
        stream = sys.stdout
    else:
        write_csv(records, sys.stdout)
        stream = sys.stderr
    for line in summary.lines():
        print(line, file=stream)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    _setup_logging()
    if argv and argv[0] == "gen":
        return _gen(argv[1:])
    parser = _match_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    config = PipelineConfig(
        filter=args.filter,
        engine=args.engine,
        max_matches=args.max_matches if args.max_matches > 0 else None,
        time_limit=args.time_limit if args.time_limit > 0 else None,
    )
    try:
        if args.query is None:
            if args.seed is None:
                parser.error("give --query, or --seed to extract queries from the data graph")
            G = read_graph(args.data)
            rng = random.Random(args.seed)
            with tempfile.TemporaryDirectory() as tmp:
                for i in range(args.num_queries):
                    q = extract_query(rng, G, args.query_size)
                    write_graph(q, Path(tmp) / query_filename(q, i))
                records, summary = run_suite(args.data, tmp, config, args.workers)
            _emit_suite(records, summary, args.out)
            return 0
        if Path(args.query).is_dir():
            if args.dump:
                parser.error("--dump needs a single query file")
            if not Path(args.data).is_file():
                raise FileNotFoundError(args.data)
            records, summary = run_suite(args.data, args.query, config, args.workers)
            _emit_suite(records, summary, args.out)
            return 0
        record = run_single(args.data, args.query, config, args.dump)
    except (OSError, GraphFormatError, GraphValidationError, DisconnectedQueryError, ValueError) as exc:
        print(f"match: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            write_csv([record], fh)
    else:
        write_csv([record], sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
