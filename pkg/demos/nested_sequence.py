"""
Shrinking a tree to its branch vertices
=======================================

The host tree of a decomposition is shrunk level by level: each level keeps the
smallest subtree holding the previous level's branch vertices. The number of
levels tracks the depth of the largest perfect binary tree hiding inside.
"""

from tbspanner import Graph, nested_sequence, pbt_bruteforce
from tbspanner.generators import complete_binary_tree, random_tree

edges = [(5, 6), (6, 0), (0, 9), (9, 12), (12, 11), (1, 0), (1, 7), (7, 2), (2, 4),
         (2, 3), (3, 8), (12, 10), (5, 13), (5, 14), (14, 15), (18, 17), (17, 19),
         (17, 16), (16, 7)]
t = Graph(20, edges)

# with the default rule a 3-node path ends the sequence
for rule in (3, 2):
    seq = nested_sequence(t, final_path_length=rule)
    print(f"final path length {rule}: d={seq.d}, level sizes {seq.level_sizes()}")
print("perfect binary tree depth:", pbt_bruteforce(t))

for b in range(5):
    cbt = complete_binary_tree(b)
    print(f"complete binary tree, depth {b}: n={cbt.n:2d}  d={nested_sequence(cbt).d}  "
          f"pbt={pbt_bruteforce(cbt)}")

# random trees stay within one of each other
gaps = [pbt_bruteforce(r) - nested_sequence(r).d for r in (random_tree(30, s) for s in range(200))]
print("pbt - d over 200 random trees:", sorted(set(gaps)))
