import math

import pytest
from hypothesis import given, settings, strategies as st

from tbspanner.generators import (complete, cycle, grid, path, random_connected, random_tree,
                                  snowflake, snowflake_decomposition, star)
from tbspanner.graph import Graph, SubtreeOfGraph, apsp
from tbspanner.spanner import extend_subtree
from tbspanner.treedec import (InvalidDecomposition, TreeDecomposition, breadth,
                               from_multiplicative_spanner, heuristic_layering_decomposition,
                               normalize, validate)
from tbspanner.verify import multiplicative_stretch


def single_bag(g):
    return TreeDecomposition(Graph(1), [range(g.n)], g.n)


def bfs_tree(g, root=0):
    return extend_subtree(g, SubtreeOfGraph.single(g, root), range(g.n))


@pytest.mark.parametrize("g", [path(4), cycle(5), complete(4), grid(3, 3)])
def test_single_bag_is_valid(g):
    assert validate(single_bag(g), g) == []


def test_uncovered_edge_is_named():
    g = Graph(2, [(0, 1)])
    td = TreeDecomposition(Graph(2, [(0, 1)]), [[0], [1]], 2)
    (v,) = validate(td, g)
    assert v.axiom == "edge-coverage" and v.item == (0, 1)
    assert str(v) == "edge 0-1 uncovered"


def test_other_violations():
    g = path(3)
    td = TreeDecomposition(Graph(3, [(0, 1), (1, 2)]), [[0, 1], [1, 2], [0]], 3)
    assert [v.axiom for v in validate(td, g)] == ["vertex-connectivity"]
    td = TreeDecomposition(Graph(2, [(0, 1)]), [[0, 1], [1]], 3)
    kinds = {v.axiom for v in validate(td, g)}
    assert kinds == {"vertex-coverage", "edge-coverage"}
    td = TreeDecomposition(Graph(2), [[0, 1], [1, 2]], 3)
    assert validate(td, g)[0].axiom == "host-tree"
    with pytest.raises(ValueError):
        validate(TreeDecomposition(Graph(1), [[0, 7]], 3), g)


def test_snowflake_two_decomposition_valid():
    td = snowflake_decomposition(2)
    assert len(td) == 4
    assert validate(td, snowflake(2)) == []


def test_breadth_examples():
    g = Graph(1)
    assert breadth(TreeDecomposition(Graph(1), [[0]], 1), g) == 0
    assert breadth(single_bag(complete(4)), complete(4)) == 1
    for k in range(1, 6):
        g = snowflake(k)
        assert breadth(snowflake_decomposition(k), g, apsp(g)) == 1


def test_breadth_rejects_invalid():
    g = Graph(2, [(0, 1)])
    with pytest.raises(InvalidDecomposition):
        breadth(TreeDecomposition(Graph(2, [(0, 1)]), [[0], [1]], 2), g)


def test_normalize_identical_bags():
    td = TreeDecomposition(Graph(2, [(0, 1)]), [[0, 1], [0, 1]], 2)
    out = normalize(td)
    assert len(out) == 1 and out.bags == (frozenset({0, 1}),)


def test_normalize_nested_chain():
    bags = [range(i + 1) for i in range(5)]
    td = TreeDecomposition(path(5), bags, 5)
    out = normalize(td)
    assert len(out) == 1 and out.bags[0] == frozenset(range(5))


def test_normalize_keeps_normalized_input():
    g = snowflake(3)
    td = snowflake_decomposition(3)
    assert normalize(td) == td
    assert validate(td, g) == []


def test_normalize_removes_attached_empty_bag():
    td = TreeDecomposition(Graph(3, [(0, 1), (1, 2)]), [[0, 1], [], [1, 2]], 3)
    out = normalize(td)
    assert len(out) == 2 and validate(out, path(3)) == []


def test_from_multiplicative_on_a_tree():
    t = random_tree(12, seed=3)
    td = from_multiplicative_spanner(t, SubtreeOfGraph(t, range(t.n), t.edges), 1)
    for u in range(t.n):
        assert td.bags[u] == {u} | set(t.adj[u])
    assert validate(td, t) == [] and breadth(td, t) <= 1


def test_from_multiplicative_c4():
    g = cycle(4)
    t = SubtreeOfGraph(g, range(4), [(0, 1), (1, 2), (2, 3)])
    assert multiplicative_stretch(g, t) == 3
    td = from_multiplicative_spanner(g, t, 3)
    assert validate(td, g) == [] and breadth(td, g) <= 2


def test_from_multiplicative_rejects_non_spanning():
    g = cycle(4)
    with pytest.raises(ValueError):
        from_multiplicative_spanner(g, SubtreeOfGraph(g, [0, 1], [(0, 1)]), 3)


def test_layering_examples():
    g = star(4)
    td = heuristic_layering_decomposition(g)
    assert validate(td, g) == [] and breadth(td, g) == 1
    g = path(5)
    td = heuristic_layering_decomposition(g)
    assert validate(td, g) == [] and breadth(td, g) <= 1
    g = grid(5, 5)
    td = heuristic_layering_decomposition(g)
    assert validate(td, g) == [] and breadth(td, g) >= 1


def test_layering_rejects_disconnected():
    with pytest.raises(ValueError):
        heuristic_layering_decomposition(Graph(4, [(0, 1), (2, 3)]))


connected = st.builds(
    lambda n, extra, seed: random_connected(n, min(n - 1 + extra, n * (n - 1) // 2), seed),
    st.integers(1, 40), st.integers(0, 80), st.integers(0, 10**6))


@settings(max_examples=80, deadline=None)
@given(connected)
def test_layering_then_normalize(g):
    td = heuristic_layering_decomposition(g)
    assert validate(td, g) == []
    norm = normalize(td)
    assert validate(norm, g) == []
    assert len(norm) <= g.n
    assert normalize(norm) == norm
    dm = apsp(g)
    assert breadth(norm, g, dm) <= breadth(td, g, dm)


@settings(max_examples=60, deadline=None)
@given(connected, st.integers(0, 10**6))
def test_tree_balls_give_valid_small_breadth(g, root_seed):
    t = bfs_tree(g, root_seed % g.n)
    k = max(1, math.ceil(multiplicative_stretch(g, t)))
    td = from_multiplicative_spanner(g, t, k)
    assert validate(td, g) == []
    assert breadth(td, g) <= math.ceil(k / 2)
