"""Instance factories: snowflake graphs, classic families and seeded random graphs."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from .graph import Graph
from .treedec import TreeDecomposition


@dataclass(frozen=True)
class SnowflakeSpec:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"snowflake index must be >= 1, got {self.k}")

    @property
    def n(self) -> int:
        return 3 * 2 ** (self.k - 1)


def _snowflake(k: int):
    """Edges, triangle bags and the bag tree of ``G_k``.

    Numbering is generation-major: the first triangle is 0-2, then each
    generation's new vertices in sorted-edge scan order.
    """
    SnowflakeSpec(k)
    edges = {(0, 1), (0, 2), (1, 2)}
    deg = [2, 2, 2]
    bags = [(0, 1, 2)]
    host_edges = []
    owner = {e: 0 for e in edges}  # edge -> triangle bag that created it
    for _ in range(k - 1):
        grow = [(u, v) for u, v in sorted(edges) if deg[u] == 2 or deg[v] == 2]
        for u, v in grow:
            w = len(deg)
            deg.append(2)
            deg[u] += 1
            deg[v] += 1
            edges.update([(u, w), (v, w)])
            node = len(bags)
            bags.append((u, v, w))
            host_edges.append((owner[(u, v)], node))
            owner[(u, w)] = owner[(v, w)] = node
    return len(deg), sorted(edges), bags, host_edges


def snowflake(k: int) -> Graph:
    """``G_1`` is a triangle; ``G_{i+1}`` adds a vertex on every edge of ``G_i`` touching a degree-2 vertex."""
    n, edges, _, _ = _snowflake(k)
    return Graph(n, edges)


def snowflake_decomposition(k: int) -> TreeDecomposition:
    """Breadth-1 decomposition of ``G_k``: one bag per triangle, joined by creation."""
    n, _, bags, host_edges = _snowflake(k)
    return TreeDecomposition(Graph(len(bags), host_edges), bags, n)


def path(n: int) -> Graph:
    _positive(n)
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with centre 0."""
    _positive(leaves)
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    _positive(n)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(rows: int, cols: int) -> Graph:
    """Row-major ``rows x cols`` grid; vertex ``r*cols + c``."""
    _positive(rows)
    _positive(cols)
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def complete_binary_tree(depth: int) -> Graph:
    """Heap-numbered perfect binary tree with ``2**(depth+1) - 1`` nodes."""
    if depth < 0:
        raise ValueError(f"depth must be non-negative, got {depth}")
    n = 2 ** (depth + 1) - 1
    return Graph(n, [((i - 1) // 2, i) for i in range(1, n)])


CLASSIC = {
    "path": path,
    "cycle": cycle,
    "star": star,
    "complete": complete,
    "grid": grid,
    "complete_binary_tree": complete_binary_tree,
}


def classic(name: str, *params: int) -> Graph:
    try:
        make = CLASSIC[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(CLASSIC)}") from None
    return make(*params)


def _positive(x: int):
    if x < 1:
        raise ValueError(f"size must be positive, got {x}")


def prufer_to_edges(seq, n: int) -> list[tuple[int, int]]:
    """Edges of the labelled tree on ``0..n-1`` encoded by ``seq`` (length ``n-2``)."""
    if n < 2:
        return []
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return edges


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree via a random Prüfer sequence."""
    _positive(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Graph(n, prufer_to_edges(seq, n))


def random_connected(n: int, m: int, seed: int = 0) -> Graph:
    """Random tree on ``n`` vertices plus ``m - (n-1)`` distinct extra edges."""
    _positive(n)
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise ValueError(f"no simple connected graph has n={n} and m={m}")
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    edges = {(min(e), max(e)) for e in prufer_to_edges(seq, n)}
    extra = m - len(edges)
    free = n * (n - 1) // 2 - len(edges)
    if extra > free // 2:
        pool = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
        edges.update(rng.sample(pool, extra))
    else:
        while len(edges) < m:
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return Graph(n, edges)
