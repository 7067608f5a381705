"""Seeded synthetic workloads: a data graph plus query graphs in the graph-file format.

Query files are named ``<size><S|D>_<index>.graph``; ``S`` marks queries with
average degree below 3, ``D`` the rest.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .graph import Graph, write_graph

__all__ = [
    "GenParams",
    "random_data_graph",
    "random_query",
    "extract_query",
    "query_filename",
    "gen_instances",
]

MAX_ATTEMPTS = 2000


@dataclass
class GenParams:
    """Workload shape.

    With ``communities > 1`` the data graph is a planted partition: vertices
    are split into equal consecutive blocks, pairs inside a block are joined
    with probability ``data_density`` and pairs across blocks with
    ``cross_density``. With one community it is plain G(n, p).

    ``query_density`` is a lower bound on the fraction of vertex pairs joined
    in each query (``None`` for no bound). Extracted queries are connected
    vertex-induced subgraphs of the data graph; independent ones are random
    connected graphs with their own labels.
    """

    data_vertices: int = 200
    data_density: float = 0.05
    labels: int = 4
    communities: int = 1
    cross_density: float = 0.0
    query_vertices: int = 8
    query_density: float | None = None
    num_queries: int = 5
    extract: bool = True

    def validate(self) -> None:
        for name in ("data_density", "cross_density"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if self.query_density is not None and not 0.0 <= self.query_density <= 1.0:
            raise ValueError(f"query_density must lie in [0, 1], got {self.query_density}")
        if self.labels < 1:
            raise ValueError("labels must be at least 1")
        if self.data_vertices < 0 or self.query_vertices < 1 or self.num_queries < 0:
            raise ValueError("vertex and query counts must be positive")
        if self.communities < 1 or self.communities > max(1, self.data_vertices):
            raise ValueError("communities must lie in 1..data_vertices")
        if self.extract and self.query_vertices > self.data_vertices:
            raise ValueError("cannot extract a query larger than the data graph")


def random_data_graph(rng: random.Random, n: int, p: float, labels: int, communities: int = 1, cross: float = 0.0) -> Graph:
    block = [v * communities // n for v in range(n)] if n else []
    lab = [rng.randrange(labels) for _ in range(n)]
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < (p if block[a] == block[b] else cross):
                edges.append((a, b))
    return Graph.from_edges(lab, edges)


def _min_edges(n: int, density: float | None) -> int:
    if density is None:
        return 0
    pairs = n * (n - 1) // 2
    # smallest edge count reaching the requested fraction
    need = int(density * pairs)
    return need if need >= density * pairs - 1e-9 else need + 1


def random_query(rng: random.Random, n: int, density: float, labels: int) -> Graph:
    """Random connected graph: a random spanning tree plus extra edges.

    Extra pairs are added with the probability needed to reach ``density``
    on average, and the draw is repeated until the edge fraction is at least
    ``density``.
    """
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    need = _min_edges(n, density)
    pairs = n * (n - 1) // 2
    extra_pairs = pairs - (n - 1)
    for _ in range(MAX_ATTEMPTS):
        verts = list(range(n))
        rng.shuffle(verts)
        edges = {tuple(sorted((verts[i], verts[rng.randrange(i)]))) for i in range(1, n)}
        p_extra = 0.0 if extra_pairs <= 0 else min(1.0, max(0.0, (need - (n - 1)) / extra_pairs) * 1.15)
        for a in range(n):
            for b in range(a + 1, n):
                if (a, b) not in edges and rng.random() < p_extra:
                    edges.add((a, b))
        if len(edges) >= need:
            return Graph.from_edges([rng.randrange(labels) for _ in range(n)], sorted(edges))
    raise ValueError(f"could not reach query density {density} with {n} vertices")


def extract_query(rng: random.Random, G: Graph, n: int, density: float | None = None) -> Graph:
    """Connected induced subgraph of ``G`` on ``n`` vertices grown from a random seed vertex.

    Each step adds a uniformly chosen vertex of the current frontier. Draws
    whose induced edge fraction falls below ``density`` are rejected.
    """
    if n > G.vertex_count:
        raise ValueError("query larger than data graph")
    need = _min_edges(n, density)
    adj = [set(nb) for nb in G.adjacency]
    for _ in range(MAX_ATTEMPTS):
        start = rng.randrange(G.vertex_count)
        chosen = [start]
        inside = {start}
        frontier = set(adj[start])
        while len(chosen) < n and frontier:
            w = rng.choice(sorted(frontier))
            chosen.append(w)
            inside.add(w)
            frontier |= adj[w]
            frontier -= inside
        if len(chosen) < n:
            continue
        pos = {v: i for i, v in enumerate(chosen)}
        edges = [(pos[a], pos[b]) for a in chosen for b in adj[a] if b in pos and pos[a] < pos[b]]
        if len(edges) >= need:
            return Graph.from_edges([G.labels[v] for v in chosen], edges)
    raise ValueError(f"could not extract a connected {n}-vertex query with density >= {density}")


def query_filename(q: Graph, index: int) -> str:
    n = q.vertex_count
    avg_degree = 2 * q.edge_count / n if n else 0.0
    return f"{n}{'S' if avg_degree < 3 else 'D'}_{index}.graph"


def gen_instances(seed: int, params: GenParams, out_dir) -> list[Path]:
    """Write ``data.graph`` and ``params.num_queries`` query files; return the paths."""
    params.validate()
    rng = random.Random(seed)
    G = random_data_graph(
        rng, params.data_vertices, params.data_density, params.labels, params.communities, params.cross_density
    )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data_path = out / "data.graph"
    write_graph(G, data_path)
    paths = [data_path]
    qdir = out / "queries"
    qdir.mkdir(exist_ok=True)
    for i in range(params.num_queries):
        if params.extract:
            q = extract_query(rng, G, params.query_vertices, params.query_density)
        else:
            q = random_query(rng, params.query_vertices, params.query_density or 0.0, params.labels)
        path = qdir / query_filename(q, i)
        write_graph(q, path)
        paths.append(path)
    return paths
