"""Undirected vertex-labeled graphs and the text format used by the benchmark suites.

File format::

    t <num_vertices> <num_edges>
    v <id> <label> <degree>      # one per vertex, ascending id
    e <src> <dst>                # one per undirected edge

Graphs are immutable once built; every downstream stage reads adjacency,
labels and the neighbor-label-frequency table from here.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "GraphFormatError",
    "GraphValidationError",
    "load_graph",
    "read_graph",
    "dump_graph",
    "write_graph",
    "neighbors",
    "is_connected",
]


class GraphFormatError(ValueError):
    """A line of a graph file could not be parsed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class GraphValidationError(ValueError):
    """The parsed graph violates a structural invariant."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected vertex-labeled graph.

    Vertices are ``0..vertex_count-1``. ``adjacency[v]`` is a strictly
    ascending tuple. ``labels`` keeps the labels as given in the input;
    ``label_ids`` maps each distinct label to a dense id in ascending label
    order.
    """

    labels: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]
    edge_count: int
    label_ids: Mapping[int, int] = field(repr=False)
    label_index: Mapping[int, tuple[int, ...]] = field(repr=False)
    nlf_table: tuple[Mapping[int, int], ...] = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def num_labels(self) -> int:
        return len(self.label_ids)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """Each undirected edge once, as ``(a, b)`` with ``a < b``, sorted."""
        return [(a, b) for a, nbrs in enumerate(self.adjacency) for b in nbrs if a < b]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.labels, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edge_count={self.edge_count}, labels={self.num_labels})"

    @classmethod
    def from_edges(cls, labels: Sequence[int], edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from a label list and an undirected edge list.

        Edges may be given in either orientation. Self-loops, duplicate edges,
        out-of-range endpoints and negative labels raise
        :class:`GraphValidationError`.
        """
        labels = tuple(int(x) for x in labels)
        n = len(labels)
        for v, lab in enumerate(labels):
            if lab < 0:
                raise GraphValidationError(f"vertex {v} has negative label {lab}")
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for a, b in edges:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise GraphValidationError(f"edge ({a}, {b}) references a vertex outside 0..{n - 1}")
            if a == b:
                raise GraphValidationError(f"self-loop on vertex {a}")
            if b in adj[a]:
                raise GraphValidationError(f"duplicate edge ({min(a, b)}, {max(a, b)})")
            adj[a].add(b)
            adj[b].add(a)
            m += 1
        adjacency = tuple(tuple(sorted(s)) for s in adj)
        return cls._build(labels, adjacency, m)

    @classmethod
    def from_networkx(cls, g, label: str = "label") -> "Graph":
        """Convert a networkx-style graph whose nodes are ``0..n-1``.

        Node attribute ``label`` supplies the vertex label (0 when missing).
        """
        nodes = sorted(g.nodes)
        if nodes != list(range(len(nodes))):
            raise GraphValidationError("node ids must be exactly 0..n-1")
        labels = [g.nodes[v].get(label, 0) for v in nodes]
        return cls.from_edges(labels, g.edges)

    @classmethod
    def _build(cls, labels: tuple[int, ...], adjacency: tuple[tuple[int, ...], ...], m: int) -> "Graph":
        distinct = sorted(set(labels))
        label_ids = {lab: i for i, lab in enumerate(distinct)}
        buckets: dict[int, list[int]] = {lab: [] for lab in distinct}
        for v, lab in enumerate(labels):
            buckets[lab].append(v)
        label_index = {lab: tuple(vs) for lab, vs in buckets.items()}
        nlf = tuple(dict(Counter(labels[w] for w in nbrs)) for nbrs in adjacency)
        return cls(
            labels=labels,
            adjacency=adjacency,
            edge_count=m,
            label_ids=label_ids,
            label_index=label_index,
            nlf_table=nlf,
        )


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphFormatError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def load_graph(text: str) -> Graph:
    """Parse graph-file content.

    Declared vertex degrees are cross-checked against the parsed edges.
    """
    header = None
    labels: list[int] = []
    declared: list[int] = []
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        kind, rest = tokens[0], tokens[1:]
        if kind == "t":
            if header is not None:
                raise GraphFormatError(lineno, "duplicate 't' header")
            if len(rest) != 2:
                raise GraphFormatError(lineno, "expected 't <num_vertices> <num_edges>'")
            header = _ints(rest, lineno)
            if min(header) < 0:
                raise GraphFormatError(lineno, "negative count in header")
        elif header is None:
            raise GraphFormatError(lineno, "missing 't' header before data")
        elif kind == "v":
            if len(rest) != 3:
                raise GraphFormatError(lineno, "expected 'v <id> <label> <degree>'")
            if edges:
                raise GraphFormatError(lineno, "vertex line after edge lines")
            vid, lab, deg = _ints(rest, lineno)
            if vid != len(labels):
                raise GraphValidationError(f"line {lineno}: vertex id {vid} out of order, expected {len(labels)}")
            if vid >= header[0]:
                raise GraphValidationError(f"line {lineno}: vertex id {vid} out of range 0..{header[0] - 1}")
            labels.append(lab)
            declared.append(deg)
        elif kind == "e":
            if len(rest) < 2:
                raise GraphFormatError(lineno, "expected 'e <src> <dst>'")
            # some published datasets append an edge label column; it is ignored
            a, b = _ints(rest[:2], lineno)
            if not (0 <= a < header[0] and 0 <= b < header[0]):
                raise GraphValidationError(f"line {lineno}: edge ({a}, {b}) has a vertex id out of range")
            edges.append((a, b))
        else:
            raise GraphFormatError(lineno, f"unknown record type {kind!r}")
    if header is None:
        raise GraphFormatError(1, "empty input, missing 't' header")
    n, m = header
    if len(labels) != n:
        raise GraphValidationError(f"header declares {n} vertices, found {len(labels)}")
    if len(edges) != m:
        raise GraphValidationError(f"header declares {m} edges, found {len(edges)}")
    g = Graph.from_edges(labels, edges)
    for v, deg in enumerate(declared):
        if g.degree(v) != deg:
            raise GraphValidationError(f"vertex {v} declares degree {deg} but has {g.degree(v)} edges")
    return g


def read_graph(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return load_graph(fh.read())


def dump_graph(g: Graph) -> str:
    """Serialize ``g`` in the graph-file format (inverse of :func:`load_graph`)."""
    lines = [f"t {g.vertex_count} {g.edge_count}"]
    lines.extend(f"v {v} {g.labels[v]} {g.degree(v)}" for v in range(g.vertex_count))
    lines.extend(f"e {a} {b}" for a, b in g.edges())
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dump_graph(g))


def neighbors(g: Graph, v: int) -> tuple[int, ...]:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range 0..{g.vertex_count - 1}")
    return g.adjacency[v]


def is_connected(g: Graph) -> bool:
    n = g.vertex_count
    if n == 0:
        return True
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(w)
    return reached == n
