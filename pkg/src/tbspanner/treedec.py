"""Tree decompositions: validation, breadth, normalization and constructions."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import INF, DistanceMatrix, Graph, bfs, is_connected, radius_of_set


class InvalidDecomposition(ValueError):
    """Raised when an operation needs a valid tree decomposition and got none."""

    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"invalid tree decomposition: {head}{more}")


@dataclass(frozen=True)
class Violation:
    axiom: str  # "host-tree", "vertex-coverage", "vertex-connectivity", "edge-coverage"
    item: tuple
    nodes: tuple

    def __str__(self):
        if self.axiom == "edge-coverage":
            return f"edge {self.item[0]}-{self.item[1]} uncovered"
        if self.axiom == "vertex-coverage":
            return f"vertex {self.item[0]} in no bag"
        if self.axiom == "vertex-connectivity":
            return f"vertex {self.item[0]}: bags at nodes {list(self.nodes)} are disconnected"
        return f"host tree: {self.item[0]}"


class TreeDecomposition:
    """Host tree plus one bag of graph vertices per host node."""

    __slots__ = ("host_tree", "bags", "g_n")

    def __init__(self, host_tree: Graph, bags: Iterable[Iterable[int]], g_n: int):
        bags = tuple(frozenset(int(v) for v in b) for b in bags)
        if len(bags) != host_tree.n:
            raise ValueError(f"{len(bags)} bags for a host tree of {host_tree.n} nodes")
        self.host_tree = host_tree
        self.bags = bags
        self.g_n = g_n

    def __len__(self):
        return self.host_tree.n

    def __eq__(self, other):
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return (self.host_tree == other.host_tree and self.bags == other.bags
                and self.g_n == other.g_n)

    def __repr__(self):
        width = max((len(b) for b in self.bags), default=0)
        return f"TreeDecomposition(nodes={len(self)}, max_bag={width}, g_n={self.g_n})"

    def nodes_containing(self) -> list[list[int]]:
        """For each graph vertex, the host nodes whose bags contain it."""
        where: list[list[int]] = [[] for _ in range(self.g_n)]
        for t, bag in enumerate(self.bags):
            for v in bag:
                where[v].append(t)
        return where


def is_tree(t: Graph) -> bool:
    return t.n >= 1 and t.m == t.n - 1 and is_connected(t)


def validate(td: TreeDecomposition, g: Graph) -> list[Violation]:
    """All violated axioms; an empty list means ``td`` decomposes ``g``."""
    for t, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise ValueError(f"bag {t} references vertex {v}, graph has {g.n} vertices")
    out: list[Violation] = []
    host = td.host_tree
    if not is_tree(host):
        out.append(Violation("host-tree", ("not a tree",), tuple(range(host.n))))
        return out

    where: list[list[int]] = [[] for _ in range(g.n)]
    for t, bag in enumerate(td.bags):
        for v in bag:
            where[v].append(t)
    # nodes holding v span a subtree iff they induce exactly |nodes|-1 host edges
    inside = [0] * g.n
    for a, b in host.edges:
        for v in td.bags[a] & td.bags[b]:
            inside[v] += 1
    for v in range(g.n):
        if not where[v]:
            out.append(Violation("vertex-coverage", (v,), ()))
        elif inside[v] != len(where[v]) - 1:
            out.append(Violation("vertex-connectivity", (v,), tuple(where[v])))
    for u, v in g.edges:
        small, other = (u, v) if len(where[u]) <= len(where[v]) else (v, u)
        if not any(other in td.bags[t] for t in where[small]):
            out.append(Violation("edge-coverage", (u, v), ()))
    return out


def breadth(td: TreeDecomposition, g: Graph, dm: Optional[DistanceMatrix] = None) -> int:
    """Largest bag radius, measured in ``g``."""
    problems = validate(td, g)
    if problems:
        raise InvalidDecomposition(problems)
    radius = 0
    seen = set()
    for bag in td.bags:
        if len(bag) <= 1 or bag in seen:
            continue
        seen.add(bag)
        radius = max(radius, radius_of_set(g, dm, bag))
    return radius


def normalize(td: TreeDecomposition) -> TreeDecomposition:
    """Contract host edges ``st`` with ``X_s`` a subset of ``X_t`` until none remain.

    The smallest contractible edge (by sorted node pair) is contracted first, the
    node with the larger bag surviving. Whether an edge is contractible depends
    only on its two bags, so a heap of candidate edges reproduces the
    restart-after-each-contraction scan exactly.
    """
    bags = list(td.bags)
    nbrs = [set(a) for a in td.host_tree.adj]
    alive = [True] * len(bags)
    heap = list(td.host_tree.edges)
    heapq.heapify(heap)
    while heap:
        a, b = heapq.heappop(heap)
        if not (alive[a] and alive[b] and b in nbrs[a]):
            continue
        if bags[a] <= bags[b]:
            keep, drop = b, a
        elif bags[b] <= bags[a]:
            keep, drop = a, b
        else:
            continue
        alive[drop] = False
        nbrs[keep].discard(drop)
        for x in nbrs[drop]:
            if x == keep:
                continue
            nbrs[x].discard(drop)
            nbrs[x].add(keep)
            nbrs[keep].add(x)
            heapq.heappush(heap, (min(x, keep), max(x, keep)))
        nbrs[drop] = set()

    survivors = [t for t in range(len(bags)) if alive[t]]
    new_id = {t: i for i, t in enumerate(survivors)}
    edges = [(new_id[a], new_id[b]) for a in survivors for b in nbrs[a] if a < b]
    out = TreeDecomposition(Graph(len(survivors), edges), [bags[t] for t in survivors], td.g_n)
    if td.g_n > 0 and len(out) > td.g_n:
        raise InvalidDecomposition(
            [Violation("host-tree", (f"{len(out)} nodes remain after contraction for "
                                     f"{td.g_n} graph vertices",), ())])
    return out


def from_multiplicative_spanner(g: Graph, t, k: int) -> TreeDecomposition:
    """Decomposition on the spanning tree ``t`` itself with tree balls as bags.

    Node ``u`` gets the bag of all vertices within tree distance ``ceil(k/2)`` of
    ``u``. When ``t`` is a multiplicative tree ``k``-spanner of ``g`` this is a
    tree decomposition of breadth at most ``ceil(k/2)``; bags come from one
    truncated BFS per node inside the tree.
    """
    from .verify import is_spanning_tree

    if not is_spanning_tree(g, t):
        raise ValueError("t is not a spanning tree of g")
    if k < 1:
        raise ValueError(f"stretch factor must be at least 1, got {k}")
    tree = t if isinstance(t, Graph) else t.as_graph()
    reach = math.ceil(k / 2)
    bags = []
    for u in range(g.n):
        ball = [u]
        seen = {u}
        frontier = [u]
        for _ in range(reach):
            nxt = []
            for x in frontier:
                for y in tree.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            ball.extend(nxt)
            frontier = nxt
        bags.append(ball)
    return TreeDecomposition(tree, bags, g.n)


def heuristic_layering_decomposition(g: Graph, root: int = 0) -> TreeDecomposition:
    """Layering-partition decomposition from a BFS rooted at ``root``.

    Layer ``L_i`` holds the vertices at distance ``i`` from the root. A host node
    is a cluster: the vertices of ``L_i`` lying in one connected component of the
    subgraph induced by ``L_i ∪ L_{i+1} ∪ ...``. Its bag is the cluster plus its
    neighbours in ``L_{i-1}``, which all sit in a single cluster of the previous
    layer; that cluster is the host parent. No breadth guarantee.
    """
    if g.n == 0:
        raise ValueError("cannot decompose the empty graph")
    dist, _ = bfs(g, [root])
    if any(d == INF for d in dist):
        raise ValueError("graph is disconnected")
    depth = max(dist)
    layers: list[list[int]] = [[] for _ in range(depth + 1)]
    for v in range(g.n):
        layers[dist[v]].append(v)

    uf = list(range(g.n))

    def find(x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    cluster_of = [-1] * g.n
    clusters_by_layer: list[list[list[int]]] = [[] for _ in range(depth + 1)]
    for i in range(depth, -1, -1):
        for v in layers[i]:
            for w in g.adj[v]:
                if dist[w] >= i:
                    ra, rb = find(v), find(w)
                    if ra != rb:
                        uf[ra] = rb
        groups: dict[int, list[int]] = {}
        for v in layers[i]:
            groups.setdefault(find(v), []).append(v)
        clusters_by_layer[i] = sorted(groups.values())

    members: list[list[int]] = []
    for i in range(depth + 1):
        for c in clusters_by_layer[i]:
            for v in c:
                cluster_of[v] = len(members)
            members.append(c)

    bags = []
    host_edges = []
    for node, c in enumerate(members):
        i = dist[c[0]]
        up = sorted({w for v in c for w in g.adj[v] if dist[w] == i - 1})
        bags.append(c + up)
        if up:
            host_edges.append((cluster_of[up[0]], node))
    return TreeDecomposition(Graph(len(members), host_edges), bags, g.n)
