"""
From a multiplicative tree spanner to an additive one
=====================================================

Balls of radius ceil(k/2) in a multiplicative tree k-spanner form a
decomposition of small breadth, which the builder turns into an additive
spanner.
"""

import math

from tbspanner import SubtreeOfGraph, build_from_multiplicative, extend_subtree
from tbspanner.generators import random_connected
from tbspanner.treedec import breadth, from_multiplicative_spanner
from tbspanner.verify import additive_stretch, multiplicative_stretch

g = random_connected(60, 90, seed=7)
bfs_tree = extend_subtree(g, SubtreeOfGraph.single(g, 0), range(g.n))
k = int(multiplicative_stretch(g, bfs_tree))
print(f"BFS tree: multiplicative stretch {k}, additive {additive_stretch(g, bfs_tree).max_additive}")

td = from_multiplicative_spanner(g, bfs_tree, k)
print(f"tree-ball decomposition: {len(td)} bags, breadth {breadth(td, g)} <= {math.ceil(k / 2)}")

spanner, report = build_from_multiplicative(g, bfs_tree, k)
print(f"additive spanner: stretch {report.max_additive}, bound {report.bound_checked}")
