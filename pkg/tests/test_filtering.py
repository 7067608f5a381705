import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgematch.filtering import (
    FilterStats,
    cfl_filter,
    compute_candidates,
    fgql_filter,
    gql_filter,
    nlf_filter,
    semi_matching,
)
from dgematch.graph import Graph

from instances import clique, path, random_suite, triangle


@pytest.fixture(scope="module")
def suite():
    return random_suite(seed=77, count=200)


def test_nlf_label_only():
    q = Graph.from_edges([0], [])
    assert nlf_filter(q, triangle((0, 0, 1))) == ((0, 1),)


def test_nlf_edge_query():
    q = Graph.from_edges([0, 1], [(0, 1)])
    assert nlf_filter(q, triangle((0, 0, 1))) == ((0, 1), (2,))


def _nlf_by_definition(q, G, u):
    out = []
    for v in range(G.vertex_count):
        if G.labels[v] != q.labels[u]:
            continue
        ok = True
        for lab in set(G.labels) | set(q.labels):
            need = sum(q.labels[w] == lab for w in q.adjacency[u])
            have = sum(G.labels[w] == lab for w in G.adjacency[v])
            if need > have:
                ok = False
        if ok:
            out.append(v)
    return tuple(out)


def test_nlf_matches_set_builder_definition(suite):
    for q, G, _ in suite:
        got = nlf_filter(q, G)
        assert got == tuple(_nlf_by_definition(q, G, u) for u in range(q.vertex_count))


def test_semi_matching_trivial_cases():
    assert semi_matching([], [1, 2], lambda a, b: True) == (True, {})
    assert semi_matching(["a"], [], lambda a, b: True) == (False, None)


def _exhaustive(left, right, edge):
    return any(
        all(edge(l, r) for l, r in zip(left, perm)) for perm in itertools.permutations(right, len(left))
    )


def _hall(left, right, edge):
    # Hall's condition over every subset of the left side
    for size in range(1, len(left) + 1):
        for subset in itertools.combinations(left, size):
            if len({r for r in right for l in subset if edge(l, r)}) < size:
                return False
    return True


@st.composite
def bipartite(draw, max_left=10, max_right=10):
    nl = draw(st.integers(0, max_left))
    nr = draw(st.integers(0, max_right))
    edges = draw(st.sets(st.tuples(st.integers(0, max(nl - 1, 0)), st.integers(100, 100 + max(nr - 1, 0)))))
    return list(range(nl)), list(range(100, 100 + nr)), edges


@given(bipartite(max_left=6, max_right=7))
@settings(max_examples=300, deadline=None)
def test_semi_matching_equals_exhaustive_injections(inst):
    left, right, edges = inst
    edge = lambda a, b: (a, b) in edges
    ok, assignment = semi_matching(left, right, edge)
    assert ok == _exhaustive(left, right, edge)
    if ok:
        assert sorted(assignment) == left
        assert len(set(assignment.values())) == len(left)
        assert all(edge(l, r) for l, r in assignment.items())


@given(bipartite(), st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_semi_matching_hall_condition_and_order_independence(inst, rnd):
    left, right, edges = inst
    edge = lambda a, b: (a, b) in edges
    ok, _ = semi_matching(left, right, edge)
    assert ok == _hall(left, right, edge)
    l2, r2 = left[:], right[:]
    rnd.shuffle(l2)
    rnd.shuffle(r2)
    assert semi_matching(l2, r2, edge)[0] == ok


def test_semi_matching_repairs_stale_initial_assignment():
    edge = lambda a, b: (a, b) in {("x", 1), ("x", 2), ("y", 1)}
    ok, assignment = semi_matching(["x", "y"], [1, 2], edge, initial={"x": 1, "y": 7})
    assert ok and assignment == {"x": 2, "y": 1}


def test_gql_complete_graph_keeps_everything():
    q, G = clique(3), clique(4)
    init = nlf_filter(q, G)
    assert gql_filter(q, G, init) == ((0, 1, 2, 3),) * 3


def test_gql_triangle_in_path_empties_everything():
    q, G = clique(3), path(3)
    assert gql_filter(q, G, ((0, 1, 2),) * 3) == ((), (), ())
    # NLF alone already rejects vertices of degree < 2
    assert nlf_filter(q, G) == ((1,),) * 3
    assert gql_filter(q, G, nlf_filter(q, G)) == ((), (), ())


def test_fgql_precheck_skips_second_round():
    q, G = clique(3), clique(4)
    init = nlf_filter(q, G)
    stats = FilterStats()
    assert fgql_filter(q, G, init, stats) == gql_filter(q, G, init)
    # hand count: nothing is removed, so each of the 3x4 pairs is matched exactly once
    assert stats.semi_matching_calls == 12
    assert stats.precheck_hits == 0


def test_fgql_reuses_cached_matchings_after_removals():
    # square with one pendant: removing the pendant-side candidates re-queues neighbors
    q = Graph.from_edges([0, 1, 0, 1], [(0, 1), (1, 2), (2, 3), (3, 0)])
    G = Graph.from_edges(
        [0, 1, 0, 1, 0, 1, 1],
        [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (4, 6)],
    )
    init = nlf_filter(q, G)
    fs, gs = FilterStats(), FilterStats()
    assert fgql_filter(q, G, init, fs) == gql_filter(q, G, init, gs)
    assert fs.semi_matching_calls < gs.semi_matching_calls
    assert fs.precheck_hits > 0


def test_cfl_drops_isolated_vertex():
    q = Graph.from_edges([0, 0], [(0, 1)])
    G = Graph.from_edges([0, 0, 0], [(1, 2)])
    init = ((0, 1, 2), (0, 1, 2))
    assert cfl_filter(q, G, init) == ((1, 2), (1, 2))


def test_gql_fgql_equal_and_contained_in_cfl(suite):
    for q, G, _ in suite:
        init = nlf_filter(q, G)
        g = gql_filter(q, G, init)
        f = fgql_filter(q, G, init)
        c = cfl_filter(q, G, init)
        assert f == g
        for u in range(q.vertex_count):
            assert set(f[u]) <= set(c[u]) <= set(init[u])


def test_filters_never_prune_a_true_candidate(suite):
    for q, G, emb in suite:
        for method in ("nlf", "gql", "fgql", "cfl"):
            cands = [set(c) for c in compute_candidates(q, G, method)]
            for f in emb:
                assert all(f[u] in cands[u] for u in range(q.vertex_count)), method


def test_gql_passes_shrink_monotonically():
    rng = random.Random(5)
    for _ in range(30):
        q, G, _ = random_suite(rng.randrange(10**6), 1)[0]
        sets = nlf_filter(q, G)
        total = sum(len(c) for c in sets)
        passes = 0
        while True:
            nxt = _one_gql_pass(q, G, sets)
            passes += 1
            assert all(set(a) <= set(b) for a, b in zip(nxt, sets))
            if nxt == sets:
                break
            sets = nxt
        assert passes <= total + 1
        assert sets == gql_filter(q, G, nlf_filter(q, G))


def _one_gql_pass(q, G, sets):
    member = [set(c) for c in sets]
    for u in range(q.vertex_count):
        for v in sorted(member[u]):
            ok, _ = semi_matching(q.adjacency[u], G.adjacency[v], lambda a, b: b in member[a])
            if not ok:
                member[u].discard(v)
    return tuple(tuple(sorted(s)) for s in member)


def test_unknown_filter_name():
    with pytest.raises(ValueError):
        compute_candidates(clique(2), clique(2), "daf")
