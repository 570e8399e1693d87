import pytest

from tbspanner.generators import (CLASSIC, SnowflakeSpec, classic, complete_binary_tree, cycle,
                                  grid, prufer_to_edges, random_connected, random_tree, snowflake,
                                  snowflake_decomposition)
from tbspanner.graph import is_connected
from tbspanner.treedec import breadth, is_tree, validate


def test_snowflake_small():
    g = snowflake(1)
    assert (g.n, g.m) == (3, 3)
    assert snowflake(2).n == 6
    assert snowflake(3).n == 12


@pytest.mark.parametrize("k", range(1, 11))
def test_snowflake_order_and_connectivity(k):
    g = snowflake(k)
    assert g.n == SnowflakeSpec(k).n == 3 * 2 ** (k - 1)
    assert is_connected(g)
    # outerplanar chordal: every new vertex adds two edges
    assert g.m == 2 * g.n - 3


def test_snowflake_rejects_zero():
    with pytest.raises(ValueError):
        snowflake(0)


@pytest.mark.parametrize("k,bags", [(1, 1), (2, 4), (3, 10)])
def test_snowflake_decomposition_sizes(k, bags):
    td = snowflake_decomposition(k)
    assert len(td) == bags
    assert validate(td, snowflake(k)) == []


@pytest.mark.parametrize("k", range(1, 9))
def test_snowflake_breadth_one(k):
    g = snowflake(k)
    td = snowflake_decomposition(k)
    assert validate(td, g) == []
    assert breadth(td, g) == 1


def test_classic():
    assert classic("cycle", 4) == cycle(4)
    g = grid(3, 3)
    assert (g.n, g.m) == (9, 12)
    assert complete_binary_tree(3).n == 15
    assert set(CLASSIC) == {"path", "cycle", "star", "complete", "grid", "complete_binary_tree"}
    with pytest.raises(ValueError):
        classic("petersen")
    with pytest.raises(ValueError):
        classic("path", 0)
    with pytest.raises(ValueError):
        classic("cycle", 2)


def test_prufer_known_sequence():
    # star centred at 3
    assert sorted(tuple(sorted(e)) for e in prufer_to_edges([3, 3, 3], 5)) == [
        (0, 3), (1, 3), (2, 3), (3, 4)]


def test_random_tree_and_graph():
    assert random_tree(1, seed=5).n == 1
    for seed in range(30):
        t = random_tree(12, seed)
        assert is_tree(t)
        g = random_connected(12, 11, seed)
        assert is_tree(g)
        h = random_connected(15, 40, seed)
        assert h.m == 40 and is_connected(h)
    assert random_connected(20, 50, 7) == random_connected(20, 50, 7)
    assert random_tree(20, 7) == random_tree(20, 7)
    with pytest.raises(ValueError):
        random_connected(5, 3)
    with pytest.raises(ValueError):
        random_connected(5, 11)


def test_dense_random_graph_is_complete():
    g = random_connected(8, 28, 1)
    assert g.m == 28
