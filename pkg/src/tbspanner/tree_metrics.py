"""Branch/leaf sets, the nested tree sequence and perfect-binary-tree depth."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph
from .treedec import is_tree


@dataclass(frozen=True)
class NestedTreeSequence:
    """Levels ``T_0 ⊃ T_1 ⊃ ... ⊃ T_d`` of a host tree, each a node subset."""

    levels: tuple[frozenset, ...]
    d: int

    def level_sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]


def _require_tree(t: Graph):
    if not is_tree(t):
        raise ValueError("input is not a tree")


def branch_and_leaf(t: Graph, nodes: Iterable[int]) -> tuple[frozenset, frozenset]:
    """Branch vertices (degree >= 3) and leaves (degree <= 1) of the subtree on ``nodes``.

    Degrees are counted inside the induced subtree. A lone node is its own leaf.
    """
    nodes = frozenset(nodes)
    if not nodes:
        raise ValueError("empty node set")
    deg = {v: sum(1 for w in t.adj[v] if w in nodes) for v in nodes}
    if sum(deg.values()) // 2 != len(nodes) - 1 or not _connected_within(t, nodes):
        raise ValueError("nodes do not induce a connected subtree")
    branch = frozenset(v for v, k in deg.items() if k >= 3)
    leaves = frozenset(v for v, k in deg.items() if k <= 1)
    return branch, leaves


def _connected_within(t: Graph, nodes: frozenset) -> bool:
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def minimal_subtree(t: Graph, nodes: frozenset, keep: frozenset) -> frozenset:
    """Smallest subtree of the subtree ``nodes`` containing every node of ``keep``."""
    alive = set(nodes)
    deg = {v: sum(1 for w in t.adj[v] if w in alive) for v in alive}
    stack = [v for v in alive if deg[v] <= 1 and v not in keep]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in t.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in keep:
                    stack.append(w)
    return frozenset(alive)


def _path_order(t: Graph, nodes: frozenset) -> list[int]:
    if len(nodes) == 1:
        return list(nodes)
    ends = sorted(v for v in nodes if sum(1 for w in t.adj[v] if w in nodes) == 1)
    order = [ends[0]]
    prev = None
    while len(order) < len(nodes):
        cur = order[-1]
        nxt = next(w for w in t.adj[cur] if w in nodes and w != prev)
        prev = cur
        order.append(nxt)
    return order


def nested_sequence(t: Graph, final_path_length: int = 3) -> NestedTreeSequence:
    """Shrink the tree to the minimal subtree spanning its branch vertices, repeatedly.

    When a level has no branch vertex it is a path of some length ``l``. If
    ``l >= final_path_length`` one more level holding the path's median node is
    appended; otherwise the sequence stops. The default ``3`` is the
    textbook termination rule; ``2`` makes ``d`` coincide with the
    perfect-binary-tree depth (a 3-node path then contributes a level too).
    """
    _require_tree(t)
    if final_path_length < 1:
        raise ValueError("final_path_length must be positive")
    levels = [frozenset(range(t.n))]
    while True:
        branch, _ = branch_and_leaf(t, levels[-1])
        if branch:
            levels.append(minimal_subtree(t, levels[-1], branch))
            continue
        length = len(levels[-1]) - 1
        if length >= final_path_length:
            path = _path_order(t, levels[-1])
            levels.append(frozenset([path[length // 2]]))
        break
    return NestedTreeSequence(tuple(levels), len(levels) - 1)


def d_of_tree(t: Graph, final_path_length: int = 3) -> int:
    return nested_sequence(t, final_path_length).d


def pbt_bruteforce(t: Graph) -> int:
    """Depth of the deepest perfect binary tree that is a topological minor of ``t``.

    Rooted dynamic programme, repeated for every root: ``hang[v]`` is the deepest
    subdivided perfect binary tree reachable downward from ``v`` (its root may sit
    at the end of a path leaving ``v``); a root with two child directions of hang
    depth ``a >= b`` carries depth ``b + 1``. Quadratic in the tree order.
    """
    _require_tree(t)
    if t.n > 2000:
        raise ValueError(f"tree too large for the brute-force oracle ({t.n} nodes)")
    best = 0
    for root in range(t.n):
        order, parent = _dfs_order(t, root)
        hang = [0] * t.n
        for v in reversed(order):
            child_hangs = sorted((hang[c] for c in t.adj[v] if c != parent[v]), reverse=True)
            here = child_hangs[1] + 1 if len(child_hangs) >= 2 else 0
            hang[v] = max([here] + child_hangs[:1])
        root_dirs = sorted((hang[c] for c in t.adj[root]), reverse=True)
        if len(root_dirs) >= 2:
            best = max(best, root_dirs[1] + 1)
    return best


def _dfs_order(t: Graph, root: int):
    parent = [-1] * t.n
    parent[root] = root
    order = [root]
    stack = [root]
    while stack:
        x = stack.pop()
        for y in t.adj[x]:
            if parent[y] == -1:
                parent[y] = x
                order.append(y)
                stack.append(y)
    parent[root] = -1
    return order, parent


def pbt_log_bound(n: int) -> float:
    """Largest perfect-binary-tree depth a tree on ``n`` nodes can hold: ``log2(n+1) - 1``."""
    return math.log2(n + 1) - 1
