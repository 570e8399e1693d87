import math

import pytest
from hypothesis import given, settings, strategies as st

from tbspanner.generators import (complete, cycle, grid, path, random_connected, random_tree,
                                  snowflake, snowflake_decomposition, star)
from tbspanner.graph import Graph, SubtreeOfGraph, apsp, bfs
from tbspanner.spanner import (InvariantViolation, PreconditionError, build_from_multiplicative,
                               build_spanner, check_extension, choose_hitting_set,
                               complete_spanner, core_subtree, extend_subtree, subtree_slack,
                               spanner_bound)
from tbspanner.treedec import (InvalidDecomposition, TreeDecomposition,
                               heuristic_layering_decomposition)
from tbspanner.verify import additive_stretch


def single_bag(g):
    return TreeDecomposition(Graph(1), [range(g.n)], g.n)


def test_extend_with_nothing():
    g = cycle(6)
    s = SubtreeOfGraph.single(g, 0)
    assert extend_subtree(g, s, []) is s


def test_extend_c6_takes_low_side():
    g = cycle(6)
    out = extend_subtree(g, SubtreeOfGraph.single(g, 0), [3], check=True)
    assert out.vertices == {0, 1, 2, 3}
    assert bfs(out.as_graph(), [0])[0][3] == 3


def test_extend_star():
    g = star(4)
    out = extend_subtree(g, SubtreeOfGraph.single(g, 0), range(1, 5), check=True)
    assert out.is_spanning() and set(out.edges) == set(g.edges)


def test_extend_errors():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        extend_subtree(g, SubtreeOfGraph.single(g, 0), [3])
    with pytest.raises(ValueError):
        extend_subtree(g, SubtreeOfGraph.single(g, 0), [9])


def test_check_extension_catches_a_bad_subtree():
    g = cycle(6)
    s = SubtreeOfGraph.single(g, 0)
    long_way = SubtreeOfGraph(g, [0, 5, 4, 3, 2], [(0, 5), (4, 5), (3, 4), (2, 3)])
    with pytest.raises(InvariantViolation):
        check_extension(g, s, [2], long_way)


def test_complete_spanner_examples():
    g = cycle(4)
    whole = SubtreeOfGraph(g, range(4), [(0, 1), (1, 2), (2, 3)])
    assert complete_spanner(g, whole, 0, 0) is whole
    out = complete_spanner(g, SubtreeOfGraph.single(g, 0), 0, 2)
    assert out.is_spanning()
    assert additive_stretch(g, out).max_additive == 2 <= 0 + 4 * 2

    g = snowflake(2)
    dm = apsp(g)
    s = SubtreeOfGraph(g, [0, 1], [(0, 1)])
    rho_add, _ = subtree_slack(g, s, dm)
    dist, _ = bfs(g, s.vertices)
    rho_prime = max(dist)
    out = complete_spanner(g, s, rho_add, rho_prime, dm=dm)
    assert additive_stretch(g, out, dm=dm).max_additive <= rho_add + 4 * rho_prime


def test_complete_spanner_checks_preconditions():
    g = path(6)
    with pytest.raises(PreconditionError):
        complete_spanner(g, SubtreeOfGraph.single(g, 0), 0, 2)
    g = cycle(8)
    s = SubtreeOfGraph(g, range(8), [(i, i + 1) for i in range(7)])
    part = SubtreeOfGraph(g, range(7), [(i, i + 1) for i in range(6)])
    with pytest.raises(PreconditionError):
        complete_spanner(g, part, 0, 1)
    assert s.is_spanning()


def test_hitting_set_is_minimal():
    bags = [frozenset({1, 2}), frozenset({2, 3}), frozenset({3, 4}), frozenset({5})]
    hit = choose_hitting_set(bags)
    assert all(b & set(hit) for b in bags)
    for v in hit:
        assert not all(b & (set(hit) - {v}) for b in bags)
    assert choose_hitting_set([]) == []
    with pytest.raises(ValueError):
        choose_hitting_set([frozenset()])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sets(st.integers(0, 12), min_size=1, max_size=4), max_size=10))
def test_hitting_set_property(raw):
    bags = [frozenset(b) for b in raw]
    hit = set(choose_hitting_set(bags))
    assert all(b & hit for b in bags)
    for v in hit:
        assert not all(b & (hit - {v}) for b in bags)


def test_core_single_bag():
    g = random_connected(20, 40, 1)
    s, trace = core_subtree(g, single_bag(g), check_level="per-level")
    assert len(s) == 1 and trace.d == 0 and len(trace.levels) == 1


@pytest.mark.parametrize("n", [3, 4, 7, 12])
def test_core_path_host(n):
    g = path(n)
    td = TreeDecomposition(path(n - 1), [[i, i + 1] for i in range(n - 1)], n)
    s, trace = core_subtree(g, td, check_level="per-level")
    assert subtree_slack(g, s, apsp(g))[0] <= 16 * trace.rho * trace.d


def test_core_snowflake_three():
    g = snowflake(3)
    td = snowflake_decomposition(3)
    s, trace = core_subtree(g, td, check_level="per-level")
    assert all(bag & s.vertices for bag in td.bags)
    assert trace.rho == 1 and len(trace.levels) == trace.d + 1
    assert subtree_slack(g, s, apsp(g))[0] <= 16 * trace.d


def test_build_k4():
    g = complete(4)
    spanner, report, trace = build_spanner(g, single_bag(g))
    assert (trace.rho, trace.d) == (1, 0)
    assert report.bound_checked == 8 and report.max_additive <= 1


@pytest.mark.parametrize("k", range(2, 7))
def test_build_snowflakes(k):
    g = snowflake(k)
    _, report, trace = build_spanner(g, snowflake_decomposition(k), check_level="per-level")
    assert trace.rho == 1
    assert report.max_additive <= 8 * (2 * trace.d + 1) == report.bound_checked
    assert report.bound_holds
    # no tree does better than k - 1 on these graphs
    assert report.max_additive >= k - 1 or k > 3


def test_build_rejects_invalid_decomposition():
    g = Graph(2, [(0, 1)])
    td = TreeDecomposition(Graph(2, [(0, 1)]), [[0], [1]], 2)
    with pytest.raises(InvalidDecomposition):
        build_spanner(g, td)


def test_build_from_multiplicative_examples():
    t = random_tree(15, 2)
    spanner, report = build_from_multiplicative(t, SubtreeOfGraph(t, range(15), t.edges), 1)
    assert report.max_additive == 0

    g = cycle(6)
    tree = SubtreeOfGraph(g, range(6), [(i, i + 1) for i in range(5)])
    spanner, report = build_from_multiplicative(g, tree, 5)
    assert report.bound_holds and report.bound_checked % (8 * 3) == 0
    with pytest.raises(PreconditionError):
        build_from_multiplicative(g, tree, 4)


def test_spanner_bound():
    assert spanner_bound(1, 0) == 8
    assert spanner_bound(2, 3) == 112


connected = st.builds(
    lambda n, extra, seed: random_connected(n, min(n - 1 + extra, n * (n - 1) // 2), seed),
    st.integers(1, 60), st.integers(0, 120), st.integers(0, 10**6))


@settings(max_examples=60, deadline=None)
@given(connected)
def test_build_random_with_layering(g):
    td = heuristic_layering_decomposition(g)
    _, report, trace = build_spanner(g, td, check_level="per-level")
    assert report.max_additive <= spanner_bound(trace.rho, trace.d)


@settings(max_examples=40, deadline=None)
@given(connected, st.integers(0, 10**6))
def test_build_from_bfs_tree(g, root):
    t = extend_subtree(g, SubtreeOfGraph.single(g, root % g.n), range(g.n))
    dm = apsp(g)
    k = max(1, math.ceil(additive_stretch(g, t, dm=dm).max_multiplicative))
    _, report = build_from_multiplicative(g, t, k, dm=dm, check_level="per-level")
    assert report.bound_holds


def test_grid_build_sampled():
    g = grid(12, 12)
    _, report, trace = build_spanner(g, heuristic_layering_decomposition(g), check_level="off",
                                     verify="sampled", sample_count=2000, seed=1)
    assert report.mode == "sampled" and report.bound_holds
