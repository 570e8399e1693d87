"""Undirected simple graphs, breadth first search and exact hop distances."""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, shortest_path

#: Distance between vertices in different components.
INF = math.inf


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``; ``adj[v]`` is the
    ascending tuple of neighbours of ``v``.
    """

    __slots__ = ("n", "edges", "adj", "_edge_set", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = tuple(sorted(normalized))
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self._edge_set = frozenset(normalized)
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def csr(self) -> csr_matrix:
        """Symmetric 0/1 adjacency matrix, built once and cached."""
        if self._csr is None:
            if self.edges:
                e = np.asarray(self.edges, dtype=np.int64)
                rows = np.concatenate([e[:, 0], e[:, 1]])
                cols = np.concatenate([e[:, 1], e[:, 0]])
            else:
                rows = cols = np.zeros(0, dtype=np.int64)
            data = np.ones(len(rows), dtype=np.int8)
            self._csr = csr_matrix((data, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class DistanceMatrix:
    """All-pairs hop distances; unreachable pairs hold :data:`INF`."""

    __slots__ = ("n", "dist")

    def __init__(self, dist: np.ndarray):
        dist = np.asarray(dist, dtype=np.float64)
        if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
            raise ValueError("distance matrix must be square")
        dist.setflags(write=False)
        self.n = dist.shape[0]
        self.dist = dist

    def __getitem__(self, uv):
        d = self.dist[uv]
        if np.ndim(d) == 0:
            return INF if math.isinf(d) else int(d)
        return d

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.dist).all())


def _check_vertices(g: Graph, vertices: Iterable[int]) -> list[int]:
    vs = sorted(set(int(v) for v in vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    return vs


def bfs(g: Graph, sources: Iterable[int]) -> tuple[list, list[Optional[int]]]:
    """Multi-source breadth first search.

    Returns ``(dist, parent)``. ``dist[v]`` is the hop distance from ``v`` to the
    nearest source (``INF`` if unreachable). ``parent[v]`` is the smallest-id
    neighbour of ``v`` one level closer to the sources, ``None`` for sources and
    unreachable vertices.
    """
    frontier = _check_vertices(g, sources)
    if not frontier:
        raise ValueError("bfs needs at least one source")
    dist: list = [INF] * g.n
    parent: list[Optional[int]] = [None] * g.n
    for s in frontier:
        dist[s] = 0
    adj = g.adj
    level = 0
    while frontier:
        level += 1
        found = []
        # ascending frontier: the first discoverer is the smallest-id parent
        for u in frontier:
            for v in adj[u]:
                if dist[v] == INF:
                    dist[v] = level
                    parent[v] = u
                    found.append(v)
        found.sort()
        frontier = found
    return dist, parent


def bfs_distances(g: Graph, sources: Sequence[int]) -> np.ndarray:
    """Single-source distance rows for each source, shape ``(len(sources), n)``.

    Runs in compiled code; use :func:`bfs` when parent pointers are needed.
    """
    idx = [int(s) for s in sources]
    _check_vertices(g, idx)
    out = np.empty((len(idx), g.n))
    for row, s in enumerate(idx):
        out[row] = _bfs_row(g.csr(), s)
    return out


def _bfs_row(adj: csr_matrix, source: int) -> np.ndarray:
    # In BFS order the parents' positions never decrease, so each level is
    # found by one binary search on them.
    order, pred = breadth_first_order(adj, source, directed=True, return_predecessors=True)
    k = len(order)
    pos = np.empty(adj.shape[0], dtype=np.int64)
    pos[order] = np.arange(k)
    parent_pos = pos[pred[order[1:]]]
    starts = [0, 1]
    while starts[-1] < k:
        starts.append(1 + int(np.searchsorted(parent_pos, starts[-1], side="left")))
    dist = np.full(adj.shape[0], np.inf)
    dist[order] = np.repeat(np.arange(len(starts) - 1), np.diff(starts))
    return dist


def apsp(g: Graph) -> DistanceMatrix:
    """Exact all-pairs hop distances (one BFS per vertex)."""
    if g.n == 0:
        return DistanceMatrix(np.zeros((0, 0)))
    return DistanceMatrix(shortest_path(g.csr(), method="D", directed=True, unweighted=True))


def is_connected(g: Graph) -> bool:
    if g.n < 1:
        raise ValueError("connectivity is undefined for the empty graph")
    dist, _ = bfs(g, [0])
    return all(d != INF for d in dist)


def radius_of_set(g: Graph, dm: Optional[DistanceMatrix], u_set: Iterable[int]):
    """Smallest ``r`` such that some vertex of ``g`` is within ``r`` of all of ``u_set``.

    The centre ranges over all of ``V(g)``. With ``dm`` the answer is read off the
    matrix; without it an exact bounding search runs a handful of BFS sweeps, which
    is what makes breadth computable on graphs too large for a full matrix.
    """
    members = _check_vertices(g, u_set)
    if not members:
        raise ValueError("radius of an empty set is undefined")
    if len(members) == 1:
        return 0
    if dm is not None:
        r = dm.dist[:, members].max(axis=1).min()
        return INF if math.isinf(r) else int(r)
    return _radius_by_bounds(g, members)


def _radius_by_bounds(g: Graph, members: list[int]):
    # lower[c] <= ecc_U(c) always; evaluate the most promising centre until no
    # unevaluated centre can beat the best eccentricity found.
    idx = np.asarray(members)
    lower = bfs_distances(g, [members[0]])[0]
    if not np.isfinite(lower[idx]).all():
        return INF
    probed = {members[0]}
    evaluated = np.zeros(g.n, dtype=bool)
    best = INF
    while True:
        cand = np.where(evaluated, INF, lower)
        c = int(np.argmin(cand))
        if not cand[c] < best:
            break
        row = bfs_distances(g, [c])[0]
        ecc = row[idx].max()
        evaluated[c] = True
        best = min(best, ecc)
        lower = np.maximum(lower, ecc - row)
        far = members[int(np.argmax(row[idx]))]
        if far not in probed:
            probed.add(far)
            lower = np.maximum(lower, bfs_distances(g, [far])[0])
    return INF if math.isinf(best) else int(best)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``, relabelled densely; also returns the old ids."""
    old = sorted(set(vertices))
    new = {v: i for i, v in enumerate(old)}
    edges = [(new[u], new[v]) for u, v in g.edges if u in new and v in new]
    return Graph(len(old), edges), old


class SubtreeOfGraph:
    """A subgraph of ``graph`` that is a tree: vertex subset plus edge subset.

    Checked on construction: every edge belongs to ``graph``, joins two listed
    vertices, and the whole is connected and acyclic.
    """

    __slots__ = ("graph", "vertices", "edges", "_adj")

    def __init__(self, graph: Graph, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        vs = frozenset(int(v) for v in vertices)
        es = frozenset((min(u, v), max(u, v)) for u, v in edges)
        if not vs:
            raise ValueError("a subtree needs at least one vertex")
        for v in vs:
            if not 0 <= v < graph.n:
                raise ValueError(f"vertex {v} out of range for n={graph.n}")
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for u, v in es:
            if not graph.has_edge(u, v):
                raise ValueError(f"edge {u}-{v} is not an edge of the host graph")
            if u not in vs or v not in vs:
                raise ValueError(f"edge {u}-{v} leaves the vertex set")
            adj[u].append(v)
            adj[v].append(u)
        if len(es) != len(vs) - 1:
            raise ValueError(f"{len(vs)} vertices and {len(es)} edges cannot form a tree")
        start = min(vs)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(vs):
            raise ValueError("subtree is disconnected")
        self.graph = graph
        self.vertices = vs
        self.edges = es
        self._adj = {v: tuple(sorted(a)) for v, a in adj.items()}

    @classmethod
    def single(cls, graph: Graph, v: int) -> "SubtreeOfGraph":
        return cls(graph, [v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def leaves(self) -> frozenset:
        """Vertices of degree at most one; a single-vertex tree is its own leaf."""
        return frozenset(v for v, a in self._adj.items() if len(a) <= 1)

    def is_spanning(self) -> bool:
        return len(self.vertices) == self.graph.n

    def as_graph(self) -> Graph:
        """The tree as a graph on the host's vertex ids (isolated outside vertices)."""
        return Graph(self.graph.n, self.edges)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, SubtreeOfGraph):
            return NotImplemented
        return (self.graph is other.graph or self.graph == other.graph) and \
            self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"SubtreeOfGraph(|V|={len(self.vertices)}, spanning={self.is_spanning()})"
