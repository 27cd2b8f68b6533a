import math

import networkx as nx
import pytest
from hypothesis import given, strategies as st

import oracles
from firefight.graph import (
    DisconnectedError,
    EdgeNotOnCycleError,
    Graph,
    GraphClass,
    InvalidTargetError,
    NotCactusError,
    NotRootCycleError,
    RootInSetError,
    VertexNotOnCycleError,
    break_subgraph,
    break_subgraph_edge,
    ceil_sqrt,
    count_safe,
    covered_set,
    dist,
    induced_subgraph,
    tolerance,
    tolerance_edge,
    validate_and_decompose,
    weight,
)
from firefight.instances import random_cactus, random_one_almost_tree


@st.composite
def connected_graphs(draw, max_n=10, max_extra=5):
    """Random connected graph: spanning tree by parent choice plus extras."""
    n = draw(st.integers(2, max_n))
    edges = set()
    for i in range(1, n):
        p = draw(st.integers(0, i - 1))
        edges.add((p, i))
    for _ in range(draw(st.integers(0, max_extra))):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, edges)


@st.composite
def cacti(draw, max_n=12):
    n = draw(st.integers(3, max_n))
    seed = draw(st.integers(0, 2**20))
    frac = draw(st.sampled_from([0.0, 0.3, 0.6, 1.0]))
    return random_cactus(n, frac, 6, seed)


@st.composite
def vertex_subsets(draw, g, forbid=()):
    pool = [v for v in range(g.n) if v != g.root and v not in forbid]
    return frozenset(draw(st.lists(st.sampled_from(pool), unique=True, max_size=4))) if pool else frozenset()


def test_ceil_sqrt_matches_brute():
    for x in range(1, 3000):
        k = ceil_sqrt(x)
        assert k * k >= x > (k - 1) * (k - 1)
    assert ceil_sqrt(49) == 7
    assert ceil_sqrt(50) == 8
    assert ceil_sqrt(10**12) == 10**6


def test_from_edges_sorts_adjacency():
    g = Graph.from_edges(4, [(3, 0), (0, 1), (2, 0)])
    assert g.adjacency[0] == (1, 2, 3)
    assert list(g.edges()) == [(0, 1), (0, 2), (0, 3)]
    assert g.edge_count() == 3


@pytest.mark.parametrize(
    "n, edges, root",
    [
        (3, [(0, 1), (1, 1)], 0),          # self loop
        (3, [(0, 1), (1, 0)], 0),          # duplicate edge
        (3, [(0, 1), (1, 5)], 0),          # endpoint out of range
        (3, [(0, 1), (0, 2)], 7),          # root out of range
        (0, [], 0),                        # no vertices
    ],
)
def test_from_edges_rejects_malformed(n, edges, root):
    with pytest.raises(ValueError):
        Graph.from_edges(n, edges, root)


def test_from_edges_rejects_disconnected():
    with pytest.raises(DisconnectedError):
        Graph.from_edges(4, [(0, 1), (2, 3)])


@given(connected_graphs(), st.data())
def test_covered_set_matches_reachability_oracle(g, data):
    s = data.draw(vertex_subsets(g))
    removed = data.draw(vertex_subsets(g, forbid=s))
    got = covered_set(g, removed, s)
    assert got == oracles.covered_by_reachability(g, removed, s)
    assert weight(g, removed, s) == len(got)
    assert s <= got
    assert g.root not in got


@given(cacti(max_n=8), st.data())
def test_covered_set_matches_path_enumeration(g, data):
    s = data.draw(vertex_subsets(g))
    assert covered_set(g, frozenset(), s) == oracles.covered_by_path_enumeration(
        g, frozenset(), s
    )


def test_covered_set_guards():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(RootInSetError):
        covered_set(g, (), (0,))
    with pytest.raises(ValueError):
        covered_set(g, (1,), (1,))
    with pytest.raises(ValueError):
        covered_set(g, (0,), (1,))


def test_pair_coverage_can_beat_union_of_singletons():
    # on a cycle, two vertices jointly trap what neither covers alone
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert covered_set(g, (), (1,)) == {1}
    assert covered_set(g, (), (3,)) == {3}
    assert covered_set(g, (), (1, 3)) == {1, 2, 3}


@given(connected_graphs(), st.data())
def test_count_safe_matches_oracle_and_is_monotone(g, data):
    removed = data.draw(vertex_subsets(g))
    values = [count_safe(g, removed, d) for d in range(g.n + 2)]
    for d, value in enumerate(values):
        assert value == oracles.count_safe_oracle(g, removed, d)
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert values[0] == g.n - len(removed)


@given(connected_graphs(), st.data())
def test_dist_matches_networkx(g, data):
    removed = data.draw(vertex_subsets(g))
    h = oracles.to_nx(g)
    h.remove_nodes_from(removed)
    src = g.root
    lengths = nx.single_source_shortest_path_length(h, src)
    for v in range(g.n):
        if v in removed:
            continue
        expected = lengths.get(v, math.inf)
        assert dist(g, removed, src, v) == expected


def test_decompose_tags():
    tree = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    assert validate_and_decompose(tree).class_tag is GraphClass.TREE
    one = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert validate_and_decompose(one).class_tag is GraphClass.ONE_ALMOST_TREE
    two = Graph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 3)]
    )
    assert validate_and_decompose(two).class_tag is GraphClass.CACTUS


def test_decompose_rejects_shared_edge_cycles():
    diamond = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    with pytest.raises(NotCactusError):
        validate_and_decompose(diamond)


def test_root_cycle_order_convention():
    # root cycle starts at the root and walks toward the smaller neighbor
    g = Graph.from_edges(5, [(0, 2), (2, 3), (3, 4), (4, 0), (0, 1)])
    d = validate_and_decompose(g)
    assert d.cycles == ((0, 2, 3, 4),)
    assert d.root_cycle_indices == (0,)
    assert d.is_cycle_vertex(2) and not d.is_cycle_vertex(1)
    assert d.cycle_of_edge(3, 2) == 0
    assert d.cycle_of_edge(0, 1) is None


def test_nonroot_cycle_starts_at_smallest_member():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)])
    d = validate_and_decompose(g)
    (cyc,) = d.cycles
    assert cyc[0] == min(cyc) == 1
    assert d.root_cycle_indices == ()


@given(cacti())
def test_decompose_cycles_match_networkx(g):
    d = validate_and_decompose(g)
    h = oracles.to_nx(g)
    assert oracles.is_cactus(h)
    assert len(d.cycles) == oracles.cycle_count(h)
    basis = {frozenset(c) for c in nx.cycle_basis(h)}
    assert {frozenset(c) for c in d.cycles} == basis


def test_break_subgraph_is_a_tree_view():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)])
    d = validate_and_decompose(g)
    sub = break_subgraph(g, d, 0, 2)
    # vertex 2 takes its pendant 5 with it
    assert set(sub.to_orig) == {0, 1, 3, 4}
    assert nx.is_tree(oracles.to_nx(sub.graph))
    assert sub.graph.root == sub.index_map()[0]


def test_break_subgraph_edge_keeps_all_cycle_vertices():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    d = validate_and_decompose(g)
    sub = break_subgraph_edge(g, d, 0, (0, 1))
    assert set(sub.to_orig) == {0, 1, 2, 3, 4}
    assert sub.graph.edge_count() == 4
    assert nx.is_tree(oracles.to_nx(sub.graph))


def test_break_guards():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5)])
    d = validate_and_decompose(g)
    with pytest.raises(RootInSetError):
        break_subgraph(g, d, 0, 0)
    with pytest.raises(VertexNotOnCycleError):
        break_subgraph(g, d, 0, 5)
    with pytest.raises(EdgeNotOnCycleError):
        break_subgraph_edge(g, d, 0, (2, 5))
    with pytest.raises(ValueError):
        break_subgraph(g, d, 3, 1)
    off_root = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 1)])
    d2 = validate_and_decompose(off_root)
    with pytest.raises(NotRootCycleError):
        break_subgraph(off_root, d2, 0, 2)


def test_tolerance_frozen_examples():
    # pentagon through the root with a two-vertex tail at vertex 2
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5), (5, 6)])
    d = validate_and_decompose(g)
    table = {
        (1, 1): 5,
        (1, 2): 4,
        (1, 3): 3,
        (4, 1): 4,
        (4, 2): 3,
        (4, 3): 3,
    }
    for (u, m), expected in table.items():
        assert tolerance(g, d, u, 0, m) == expected
    assert tolerance_edge(g, d, (0, 1), 0, 2) == 4
    assert tolerance_edge(g, d, (0, 4), 0, 2) == 4
    assert tolerance(g, d, 1, 0, 7) is None
    with pytest.raises(InvalidTargetError):
        tolerance(g, d, 1, 0, 0)


@given(st.integers(0, 2**20), st.integers(5, 12), st.data())
def test_tolerance_matches_definition(seed, n, data):
    g = random_one_almost_tree(n, seed, through_root=True)
    d = validate_and_decompose(g)
    if not d.root_cycle_indices:
        return
    c = d.root_cycle_indices[0]
    cyc = d.cycles[c]
    u = data.draw(st.sampled_from([v for v in cyc if v != g.root]))
    m = data.draw(st.integers(1, n))
    got = tolerance(g, d, u, c, m)
    sub = break_subgraph(g, d, c, u)
    counts = [count_safe(sub.graph, (), dd) for dd in range(n + 2)]
    feasible = [dd for dd in range(n + 2) if counts[dd] >= m]
    if got is None:
        assert not feasible
    else:
        assert got == max(feasible)
        # maximality: one step further drops below the target
        assert count_safe(sub.graph, (), got + 1) < m


def test_induced_subgraph_drop_edge_and_mapping():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    sub = induced_subgraph(g, [0, 1, 2, 3, 4], 0, drop_edge=(4, 0))
    assert sub.to_orig == (0, 1, 2, 3, 4)
    assert not sub.graph.has_edge(sub.index_map()[4], sub.index_map()[0])
    with pytest.raises(ValueError):
        induced_subgraph(g, [1, 2], 0)
