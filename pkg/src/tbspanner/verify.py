"""Exact and sampled stretch measurement, and brute-force oracles."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import DistanceMatrix, Graph, SubtreeOfGraph, apsp, bfs_distances

SCHEMA_VERSION = 1


@dataclass
class StretchReport:
    """How far a spanning tree's distances exceed the host graph's.

    In ``sampled`` mode the maxima are lower bounds on the exact values and
    ``bound_holds`` only means that no sampled pair violated the bound.
    """

    max_additive: int
    max_multiplicative: Fraction
    witness_add: tuple[int, int]
    witness_mult: tuple[int, int]
    pairs_checked: int
    mode: str = "exact"
    bound_checked: Optional[int] = None
    bound_holds: Optional[bool] = None
    seed: Optional[int] = None

    def check(self, bound: Optional[int]) -> "StretchReport":
        self.bound_checked = bound
        self.bound_holds = None if bound is None else self.max_additive <= bound
        return self

    def to_dict(self) -> dict:
        out = asdict(self)
        out["max_multiplicative"] = float(self.max_multiplicative)
        out["max_multiplicative_fraction"] = [self.max_multiplicative.numerator,
                                              self.max_multiplicative.denominator]
        out["witness_add"] = list(self.witness_add)
        out["witness_mult"] = list(self.witness_mult)
        out["schema"] = SCHEMA_VERSION
        return out


class NotASpanningTree(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    """Spanning-tree enumeration stopped before finishing; the result is inconclusive."""

    def __init__(self, budget: int, best_so_far: Optional[int]):
        self.budget = budget
        self.best_so_far = best_so_far
        super().__init__(f"more than {budget} spanning trees; best stretch seen {best_so_far}")


def is_spanning_tree(g: Graph, t) -> bool:
    """True when ``t`` (a SubtreeOfGraph or a Graph on ``g``'s vertices) spans ``g`` as a tree."""
    if isinstance(t, SubtreeOfGraph):
        if t.graph is not g and t.graph != g:
            return False
        return t.is_spanning()
    if t.n != g.n or t.m != g.n - 1:
        return False
    if any(not g.has_edge(u, v) for u, v in t.edges):
        return False
    return g.n == 0 or bool(np.isfinite(bfs_distances(t, [0])).all())


def _tree_graph(g: Graph, t) -> Graph:
    if not is_spanning_tree(g, t):
        raise NotASpanningTree("t is not a spanning tree of g")
    return t.as_graph() if isinstance(t, SubtreeOfGraph) else t


def _worst_ratio(dt: np.ndarray, dg: np.ndarray) -> tuple[Fraction, tuple[int, int]]:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dg > 0, dt / np.where(dg > 0, dg, 1), 1.0)
    flat = int(np.argmax(ratio))
    i, j = np.unravel_index(flat, ratio.shape)
    if dg[i, j] == 0:
        return Fraction(1), (0, 0)
    return Fraction(int(dt[i, j]), int(dg[i, j])), (int(i), int(j))


def additive_stretch(g: Graph, t, mode: str = "exact", *, count: int = 10_000,
                     seed: int = 0, dm: Optional[DistanceMatrix] = None,
                     bound: Optional[int] = None) -> StretchReport:
    """Largest ``d_T(u, v) - d_G(u, v)`` over vertex pairs.

    ``mode="exact"`` scans every pair; ``mode="sampled"`` draws ``count`` pairs
    from a seeded generator (sources come from a pool of about ``sqrt(count)``
    vertices so that each needs just one BFS in ``g`` and in the tree).
    """
    tree = _tree_graph(g, t)
    if g.n < 2:
        return StretchReport(0, Fraction(1), (0, 0), (0, 0), 0, mode).check(bound)
    if mode == "exact":
        dg = (dm if dm is not None else apsp(g)).dist
        dt = apsp(tree).dist
        if (dt < dg).any():
            raise AssertionError("tree distance below graph distance; distances are corrupt")
        diff = np.triu(dt - dg, k=1)
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        mult, wm = _worst_ratio(np.triu(dt, 1), np.triu(dg, 1))
        report = StretchReport(int(diff[i, j]), mult, (int(i), int(j)), wm,
                               g.n * (g.n - 1) // 2, "exact")
        return report.check(bound)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")

    rng = np.random.default_rng(seed)
    pool = min(g.n, max(1, math.isqrt(max(count, 1) - 1) + 1))
    sources = np.sort(rng.choice(g.n, size=pool, replace=False))
    dg = bfs_distances(g, sources.tolist())
    dt = bfs_distances(tree, sources.tolist())
    rows = rng.integers(0, pool, size=count)
    cols = rng.integers(0, g.n, size=count)
    add = dt[rows, cols] - dg[rows, cols]
    k = int(np.argmax(add))
    gd = dg[rows, cols]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(gd > 0, dt[rows, cols] / np.where(gd > 0, gd, 1), 1.0)
    km = int(np.argmax(ratio))
    mult = Fraction(1)
    if gd[km] > 0:
        mult = Fraction(int(dt[rows[km], cols[km]]), int(gd[km]))
    report = StretchReport(
        int(add[k]), mult,
        _pair(int(sources[rows[k]]), int(cols[k])),
        _pair(int(sources[rows[km]]), int(cols[km])),
        count, "sampled", seed=seed)
    return report.check(bound)


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def multiplicative_stretch(g: Graph, t, dm: Optional[DistanceMatrix] = None) -> Fraction:
    """Largest ``d_T(u, v) / d_G(u, v)`` over distinct pairs, as an exact fraction."""
    tree = _tree_graph(g, t)
    if g.n < 2:
        return Fraction(1)
    dg = (dm if dm is not None else apsp(g)).dist
    dt = apsp(tree).dist
    mult, _ = _worst_ratio(dt, dg)
    return mult


def min_additive_tree_stretch_bruteforce(g: Graph, budget: int = 1_000_000) -> int:
    """Smallest additive stretch over all spanning trees of ``g``.

    Spanning trees are enumerated by deciding edges in order: an edge is taken
    when it closes no cycle, and skipped only if the undecided edges can still
    connect the graph. Raises :class:`EnumerationBudgetExceeded` after ``budget``
    trees rather than sampling.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    dg = apsp(g).dist
    if not np.isfinite(dg).all():
        raise ValueError("graph is disconnected")
    edges = list(g.edges)
    n, m = g.n, len(edges)
    best = [math.inf]
    seen = [0]

    def components(parent):
        roots = set()
        for v in range(n):
            roots.add(_find(parent, v))
        return len(roots)

    def still_connectable(chosen, start):
        uf = list(range(n))
        for e in chosen:
            _union(uf, *e)
        for e in edges[start:]:
            _union(uf, *e)
        return components(uf) == 1

    rows = dg.astype(int).tolist()

    def score(chosen):
        # per-source tree BFS; stop once this tree cannot beat the best one
        adj = [[] for _ in range(n)]
        for a, b in chosen:
            adj[a].append(b)
            adj[b].append(a)
        worst = 0
        for s in range(n):
            dist = [-1] * n
            dist[s] = 0
            order = [s]
            for x in order:
                for y in adj[x]:
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        order.append(y)
            row = rows[s]
            worst = max(worst, max(dist[v] - row[v] for v in range(n)))
            if worst >= best[0]:
                break
        return worst

    def rec(i, chosen, uf):
        if len(chosen) == n - 1:
            seen[0] += 1
            if seen[0] > budget:
                raise EnumerationBudgetExceeded(budget, None if math.isinf(best[0]) else best[0])
            best[0] = min(best[0], score(chosen))
            return
        if m - i < n - 1 - len(chosen):
            return
        u, v = edges[i]
        if _find(uf, u) != _find(uf, v):
            nuf = uf.copy()
            _union(nuf, u, v)
            chosen.append((u, v))
            rec(i + 1, chosen, nuf)
            chosen.pop()
        if still_connectable(chosen, i + 1):
            rec(i + 1, chosen, uf)

    rec(0, [], list(range(n)))
    return int(best[0])


def _find(uf, x):
    while uf[x] != x:
        uf[x] = uf[uf[x]]
        x = uf[x]
    return x


def _union(uf, a, b):
    ra, rb = _find(uf, a), _find(uf, b)
    if ra != rb:
        uf[ra] = rb


def count_spanning_trees(g: Graph) -> int:
    """Kirchhoff's matrix-tree count (rounded determinant of a reduced Laplacian)."""
    if g.n <= 1:
        return 1
    lap = np.zeros((g.n, g.n))
    for u, v in g.edges:
        lap[u, v] = lap[v, u] = -1
        lap[u, u] += 1
        lap[v, v] += 1
    return int(round(np.linalg.det(lap[1:, 1:])))
