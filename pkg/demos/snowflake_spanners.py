"""
Spanners of snowflake graphs
============================

Snowflake graphs have a decomposition into triangles, so every bag has
radius 1. We build a tree spanner for each one and compare its stretch with the
guaranteed bound and with the best tree found by brute force.
"""

from tbspanner import build_spanner, snowflake, snowflake_decomposition
from tbspanner.verify import count_spanning_trees, min_additive_tree_stretch_bruteforce

# build a spanner for the first few members of the family
for k in range(1, 7):
    g = snowflake(k)
    tree, report, trace = build_spanner(g, snowflake_decomposition(k))
    print(f"G_{k}: n={g.n:3d}  d={trace.d}  stretch={report.max_additive:2d}  "
          f"bound={report.bound_checked}")

# the small ones can be searched exhaustively
for k in (2, 3):
    g = snowflake(k)
    print(f"G_{k}: {count_spanning_trees(g)} spanning trees, best additive stretch "
          f"{min_additive_tree_stretch_bruteforce(g)}")
