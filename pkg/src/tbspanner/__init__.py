"""Additive tree spanners of graphs with a tree decomposition of small breadth."""

__version__ = "0.1.0"

from .graph import INF, DistanceMatrix, Graph, SubtreeOfGraph, apsp, bfs, is_connected, radius_of_set
from .treedec import (InvalidDecomposition, TreeDecomposition, breadth, from_multiplicative_spanner,
                      heuristic_layering_decomposition, normalize, validate)
from .tree_metrics import NestedTreeSequence, d_of_tree, nested_sequence, pbt_bruteforce
from .spanner import (BuildTrace, build_from_multiplicative, build_spanner, complete_spanner,
                      core_subtree, extend_subtree, spanner_bound)
from .verify import (StretchReport, additive_stretch, is_spanning_tree,
                     min_additive_tree_stretch_bruteforce, multiplicative_stretch)
from .generators import snowflake, snowflake_decomposition

__all__ = [
    "INF", "DistanceMatrix", "Graph", "SubtreeOfGraph", "apsp", "bfs", "is_connected",
    "radius_of_set", "InvalidDecomposition", "TreeDecomposition", "breadth",
    "from_multiplicative_spanner", "heuristic_layering_decomposition", "normalize", "validate",
    "NestedTreeSequence", "d_of_tree", "nested_sequence", "pbt_bruteforce", "BuildTrace",
    "build_from_multiplicative", "build_spanner", "complete_spanner", "core_subtree",
    "extend_subtree", "spanner_bound", "StretchReport", "additive_stretch", "is_spanning_tree",
    "min_additive_tree_stretch_bruteforce", "multiplicative_stretch", "snowflake",
    "snowflake_decomposition",
]
