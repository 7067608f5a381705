"""RI matching order."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, is_connected

__all__ = ["MatchingOrder", "DisconnectedQueryError", "ri_order", "order_from_sequence"]


class DisconnectedQueryError(ValueError):
    pass


@dataclass(frozen=True)
class MatchingOrder:
    """``order[k]`` is the query vertex matched at depth ``k``.

    ``backward_neighbors[k]`` lists the positions ``j < k`` whose vertex is
    adjacent to ``order[k]``, ascending. ``position[u]`` inverts ``order``.
    """

    order: tuple[int, ...]
    backward_neighbors: tuple[tuple[int, ...], ...]
    position: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.order)


def order_from_sequence(q: Graph, order) -> MatchingOrder:
    """Wrap an explicit vertex permutation, deriving the backward neighbors."""
    order = tuple(order)
    if sorted(order) != list(range(q.vertex_count)):
        raise ValueError("order must be a permutation of the query vertices")
    position = [0] * len(order)
    for k, u in enumerate(order):
        position[u] = k
    backward = tuple(tuple(sorted(position[w] for w in q.adjacency[u] if position[w] < k)) for k, u in enumerate(order))
    return MatchingOrder(order=order, backward_neighbors=backward, position=tuple(position))


def ri_order(q: Graph) -> MatchingOrder:
    """Greedy RI order.

    The root is a maximum-degree vertex. Each later vertex is drawn from the
    frontier and maximizes, in turn:

    1. the number of its neighbors already ordered;
    2. the number of ordered vertices adjacent to one of its unordered neighbors;
    3. the number of its unordered neighbors that touch the ordered set.

    Remaining ties go to the smallest vertex id.
    """
    n = q.vertex_count
    if n == 0:
        raise ValueError("cannot order an empty query graph")
    if not is_connected(q):
        raise DisconnectedQueryError("query graph is not connected")
    adj = [set(nb) for nb in q.adjacency]
    root = min(range(n), key=lambda u: (-q.degree(u), u))
    order = [root]
    chosen = {root}
    # N(chosen): vertices adjacent to at least one ordered vertex
    touching = set(adj[root])
    while len(order) < n:
        best_key, best = None, -1
        for u in sorted(touching - chosen):
            free = adj[u] - chosen
            primary = len(adj[u] & chosen)
            tie1 = len({w for f in free for w in adj[f]} & chosen)
            tie2 = len(free & touching)
            key = (primary, tie1, tie2)
            if best_key is None or key > best_key:
                best_key, best = key, u
        order.append(best)
        chosen.add(best)
        touching |= adj[best]
    return order_from_sequence(q, order)
