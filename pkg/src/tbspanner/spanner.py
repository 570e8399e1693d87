"""Additive tree spanners grown from a tree decomposition of small breadth.

The pipeline: find a core subtree that meets every bag (one BFS growth step per
level of the host tree's nested sequence), then hang every remaining vertex off
it along shortest paths.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .graph import INF, DistanceMatrix, Graph, SubtreeOfGraph, apsp, bfs
from .tree_metrics import NestedTreeSequence, branch_and_leaf, nested_sequence
from .treedec import (InvalidDecomposition, TreeDecomposition, breadth,
                      from_multiplicative_spanner, normalize, validate)
from .verify import StretchReport, additive_stretch

CHECK_LEVELS = ("off", "final", "per-level")


class PreconditionError(ValueError):
    """A measured precondition of a construction step does not hold."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness {witness})")


class InvariantViolation(AssertionError):
    """A per-step guarantee of the construction was measured false."""


@dataclass
class LevelSnapshot:
    level: int
    vertices: list[int]
    edges: list[tuple[int, int]]
    hitting_set: list[int]
    slack_bound: int
    slack_measured: Optional[int] = None
    unhoused_base_leaves: int = 0
    seconds: float = 0.0

    def to_dict(self, with_edges: bool = False) -> dict:
        out = {"level": self.level, "size": len(self.vertices),
               "hitting_set": self.hitting_set, "slack_bound": self.slack_bound,
               "slack_measured": self.slack_measured,
               "unhoused_base_leaves": self.unhoused_base_leaves,
               "seconds": round(self.seconds, 6)}
        if with_edges:
            out["vertices"] = self.vertices
            out["edges"] = [list(e) for e in self.edges]
        return out


@dataclass
class BuildTrace:
    """Per-level record of the core-subtree recursion, deepest level first."""

    rho: int
    d: int
    levels: list[LevelSnapshot] = field(default_factory=list)
    seconds: dict = field(default_factory=dict)

    def to_dict(self, with_edges: bool = False) -> dict:
        return {"rho": self.rho, "d": self.d,
                "levels": [s.to_dict(with_edges) for s in self.levels],
                "seconds": {k: round(v, 6) for k, v in self.seconds.items()}}


def extend_subtree(g: Graph, s: SubtreeOfGraph, u_set: Iterable[int],
                   check: bool = False) -> SubtreeOfGraph:
    """Grow ``s`` into a subtree reaching every vertex of ``u_set`` by shortest routes.

    A BFS from all of ``V(s)`` at once (the contraction of ``s`` to one root,
    done implicitly) yields a forest; each target is joined to ``s`` along its
    parent chain. Targets end at their true distance to ``V(s)``, and every new
    leaf is a target. With ``check`` both facts are re-measured.
    """
    targets = sorted(set(int(u) for u in u_set))
    for u in targets:
        if not 0 <= u < g.n:
            raise ValueError(f"vertex {u} out of range for n={g.n}")
    if not targets or all(u in s.vertices for u in targets):
        return s
    dist, parent = bfs(g, s.vertices)
    vertices = set(s.vertices)
    edges = set(s.edges)
    for u in targets:
        if dist[u] == INF:
            raise PreconditionError("target unreachable from the subtree", witness=u)
        x = u
        while x not in vertices:
            vertices.add(x)
            p = parent[x]
            edges.add((p, x) if p < x else (x, p))
            x = p
    out = SubtreeOfGraph(g, vertices, edges)
    if check:
        check_extension(g, s, targets, out, dist)
    return out


def check_extension(g: Graph, s: SubtreeOfGraph, targets, out: SubtreeOfGraph, dist=None):
    """Assert both guarantees of :func:`extend_subtree` for one call."""
    if dist is None:
        dist, _ = bfs(g, s.vertices)
    in_tree, _ = bfs(out.as_graph(), s.vertices)
    for u in targets:
        if in_tree[u] != dist[u]:
            raise InvariantViolation(
                f"vertex {u}: distance to the old subtree is {in_tree[u]} in the new "
                f"subtree but {dist[u]} in the graph")
    extra = out.leaves() - s.leaves() - set(targets)
    if extra:
        raise InvariantViolation(f"new leaves outside the targets: {sorted(extra)}")


def subtree_slack(g: Graph, s: SubtreeOfGraph, dm: DistanceMatrix) -> tuple[int, tuple[int, int]]:
    """Exact ``max d_S(u, v) - d_G(u, v)`` over vertex pairs of ``s``, with a witness."""
    vs = sorted(s.vertices)
    if len(vs) < 2:
        return 0, (vs[0], vs[0])
    pos = {v: i for i, v in enumerate(vs)}
    local = Graph(len(vs), [(pos[a], pos[b]) for a, b in s.edges])
    ds = apsp(local).dist
    dg = dm.dist[np.ix_(vs, vs)]
    diff = ds - dg
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    return int(diff[i, j]), (vs[min(i, j)], vs[max(i, j)])


def distance_to_subtree(g: Graph, s: SubtreeOfGraph) -> tuple[int, int]:
    """``max_u d_G(u, V(s))`` and a vertex attaining it."""
    dist, _ = bfs(g, s.vertices)
    far = max(range(g.n), key=lambda v: (dist[v], -v))
    return dist[far], far


def complete_spanner(g: Graph, s: SubtreeOfGraph, rho_add: int, rho_prime: int,
                     dm: Optional[DistanceMatrix] = None, check: bool = True) -> SubtreeOfGraph:
    """Extend a ``rho_add``-additive subtree to a spanning tree of additive stretch ``rho_add + 4*rho_prime``.

    Requires every vertex within ``rho_prime`` of ``V(s)``. Both preconditions are
    measured first when ``check`` is set (the additivity one needs ``dm`` or an
    all-pairs computation); the distance one is always measured.
    """
    if s.is_spanning():
        return s
    reach, far = distance_to_subtree(g, s)
    if reach == INF:
        raise PreconditionError("graph is disconnected from the subtree", witness=far)
    if reach > rho_prime:
        raise PreconditionError(
            f"vertex at distance {reach} from the subtree exceeds rho'={rho_prime}", witness=far)
    if check:
        slack, pair = subtree_slack(g, s, dm if dm is not None else apsp(g))
        if slack > rho_add:
            raise PreconditionError(f"subtree is {slack}-additive, not {rho_add}-additive",
                                    witness=pair)
    rest = set(range(g.n)) - s.vertices
    return extend_subtree(g, s, rest)


def choose_hitting_set(bags: list[frozenset]) -> list[int]:
    """Inclusion-minimal vertex set meeting every bag in ``bags``.

    Greedy in bag order: an unmet bag contributes its vertex lying in the most
    still-unmet bags (smallest id on ties); a reverse pass then drops picks the
    others make redundant.
    """
    if any(not b for b in bags):
        raise ValueError("cannot hit an empty bag")
    picks: list[int] = []
    hit = [False] * len(bags)
    holders: dict[int, list[int]] = {}
    for i, b in enumerate(bags):
        for v in b:
            holders.setdefault(v, []).append(i)
    for i, b in enumerate(bags):
        if hit[i]:
            continue
        v = min(b, key=lambda x: (-sum(1 for j in holders[x] if not hit[j]), x))
        picks.append(v)
        for j in holders[v]:
            hit[j] = True
    cover = {}
    for v in picks:
        for j in holders[v]:
            cover[j] = cover.get(j, 0) + 1
    kept = list(picks)
    for v in reversed(picks):
        if all(cover[j] > 1 for j in holders[v]):
            kept.remove(v)
            for j in holders[v]:
                cover[j] -= 1
    return sorted(kept)


def _base_subtree(g: Graph, td: TreeDecomposition, last: frozenset) -> SubtreeOfGraph:
    nodes = sorted(last)
    common = frozenset.intersection(*(td.bags[t] for t in nodes))
    if common:
        return SubtreeOfGraph.single(g, min(common))
    if len(nodes) <= 2:
        raise InvalidDecomposition([])
    # a 3-node path level: a shortest path between its end bags crosses the
    # middle bag and is 0-additive
    ends = [t for t in nodes if sum(1 for w in td.host_tree.adj[t] if w in last) == 1]
    src, dst = td.bags[ends[0]], td.bags[ends[1]]
    dist, parent = bfs(g, src)
    y = min(dst, key=lambda v: (dist[v], v))
    if dist[y] == INF:
        raise PreconditionError("end bags of the last level are disconnected", witness=y)
    vertices, edges = {y}, set()
    while parent[y] is not None:
        p = parent[y]
        edges.add((min(p, y), max(p, y)))
        vertices.add(p)
        y = p
    return SubtreeOfGraph(g, vertices, edges)


def _check_level(g, td, seq, i, s, dm, rho, d, base):
    """Measure the per-level guarantees; returns (slack, unhoused base leaves).

    Every leaf of ``s`` must lie in a bag at a branch or leaf node of level ``i``,
    two distinct leaves in bags at distinct such nodes. Leaves that belong to
    the base subtree are exempt: the base sits in bags of the last level, whose
    nodes can be interior to every earlier level. They are counted instead.
    """
    missed = [t for t in seq.levels[i] if not (td.bags[t] & s.vertices)]
    if missed:
        raise InvariantViolation(f"level {i}: subtree misses the bags of nodes {missed[:5]}")
    branch, leaves = branch_and_leaf(td.host_tree, seq.levels[i])
    marked = branch | leaves
    homes = {u: frozenset(t for t in marked if u in td.bags[t]) for u in s.leaves()}
    unhoused = [u for u, h in homes.items() if not h]
    if len(s) > 1:
        stray = [u for u in unhoused if u not in base]
        if stray:
            raise InvariantViolation(f"level {i}: leaf {stray[0]} lies in no branch/leaf bag")
        housed = sorted(u for u, h in homes.items() if h)
        for a in range(len(housed)):
            for b in range(a + 1, len(housed)):
                if len(homes[housed[a]] | homes[housed[b]]) == 1:
                    raise InvariantViolation(
                        f"level {i}: leaves {housed[a]}, {housed[b]} share their only "
                        f"branch/leaf bag")
    slack, pair = subtree_slack(g, s, dm)
    bound = 16 * rho * (d - i)
    if slack > bound:
        raise InvariantViolation(f"level {i}: subtree is {slack}-additive, bound {bound} "
                                 f"(pair {pair})")
    return slack, len(unhoused) if len(s) > 1 else 0


def core_subtree(g: Graph, td: TreeDecomposition, dm: Optional[DistanceMatrix] = None, *,
                 rho: Optional[int] = None, check_level: str = "off",
                 final_path_length: int = 3) -> tuple[SubtreeOfGraph, BuildTrace]:
    """Subtree of ``g`` meeting every bag of ``td``, ``16*rho*d``-additive.

    ``td`` must be valid and normalized. The recursion walks the host tree's
    nested sequence from its last level back to the whole tree; at each step the
    leaf bags of the larger level not yet met are hit by an inclusion-minimal set
    and the subtree is grown to it by BFS. ``check_level="per-level"`` measures
    every per-level guarantee exactly (needs all-pairs distances).
    """
    if check_level not in CHECK_LEVELS:
        raise ValueError(f"check_level must be one of {CHECK_LEVELS}")
    t0 = time.perf_counter()
    seq: NestedTreeSequence = nested_sequence(td.host_tree, final_path_length)
    d = seq.d
    if check_level != "off" and dm is None:
        dm = apsp(g)
    if rho is None:
        rho = breadth(td, g, dm)
    trace = BuildTrace(rho=rho, d=d)
    trace.seconds["sequence"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    s = _base_subtree(g, td, seq.levels[d])
    snap = LevelSnapshot(d, sorted(s.vertices), sorted(s.edges), [], 0,
                         seconds=time.perf_counter() - t1)
    base = s.vertices
    if check_level == "per-level":
        snap.slack_measured, snap.unhoused_base_leaves = _check_level(
            g, td, seq, d, s, dm, rho, d, base)
    trace.levels.append(snap)

    for i in range(d, 0, -1):
        t1 = time.perf_counter()
        _, leaves = branch_and_leaf(td.host_tree, seq.levels[i - 1])
        unmet = [td.bags[t] for t in sorted(leaves) if not (td.bags[t] & s.vertices)]
        hitting = choose_hitting_set(unmet)
        if check_level == "per-level":
            _assert_minimal(hitting, unmet)
        grown = extend_subtree(g, s, hitting, check=check_level == "per-level")
        snap = LevelSnapshot(i - 1, sorted(grown.vertices), sorted(grown.edges), hitting,
                             16 * rho * (d - i + 1), seconds=time.perf_counter() - t1)
        s = grown
        if check_level == "per-level":
            snap.slack_measured, snap.unhoused_base_leaves = _check_level(
                g, td, seq, i - 1, s, dm, rho, d, base)
        trace.levels.append(snap)

    if check_level == "final":
        missed = [t for t in range(len(td)) if not (td.bags[t] & s.vertices)]
        if missed:
            raise InvariantViolation(f"core subtree misses the bags of nodes {missed[:5]}")
        slack, pair = subtree_slack(g, s, dm)
        trace.levels[-1].slack_measured = slack
        if slack > 16 * rho * d:
            raise InvariantViolation(f"core subtree is {slack}-additive, bound {16 * rho * d}")
    trace.seconds["core"] = time.perf_counter() - t0
    return s, trace


def _assert_minimal(hitting, bags):
    for v in hitting:
        rest = set(hitting) - {v}
        if all(b & rest for b in bags):
            raise InvariantViolation(f"hitting set is not inclusion-minimal: {v} is redundant")


def spanner_bound(rho: int, d: int) -> int:
    """Additive stretch guaranteed for the built spanner: ``8*rho*(2*d + 1)``."""
    return 8 * rho * (2 * d + 1)


def build_spanner(g: Graph, td: TreeDecomposition, *, check_level: str = "final",
                  verify: str = "exact", sample_count: int = 10_000, seed: int = 0,
                  dm: Optional[DistanceMatrix] = None, final_path_length: int = 3,
                  ) -> tuple[SubtreeOfGraph, StretchReport, BuildTrace]:
    """Spanning tree of ``g`` with additive stretch at most ``8*rho*(2*d(T) + 1)``.

    ``rho`` is the breadth of ``td`` and ``d(T)`` the nested-sequence depth of its
    host tree after normalization. ``verify`` picks exact or sampled stretch
    measurement for the returned report (``"off"`` skips it); ``check_level``
    controls how much of the construction is re-measured along the way.
    """
    if check_level not in CHECK_LEVELS:
        raise ValueError(f"check_level must be one of {CHECK_LEVELS}")
    t0 = time.perf_counter()
    problems = validate(td, g)
    if problems:
        raise InvalidDecomposition(problems)
    td = normalize(td)
    if dm is None and (check_level != "off" or verify == "exact"):
        dm = apsp(g)
    if dm is not None and not dm.is_finite():
        raise ValueError("graph is disconnected")
    rho = breadth(td, g, dm)
    t_prep = time.perf_counter() - t0

    core, trace = core_subtree(g, td, dm, rho=rho, check_level=check_level,
                               final_path_length=final_path_length)
    d = trace.d
    t1 = time.perf_counter()
    reach, far = distance_to_subtree(g, core)
    if reach > 2 * rho:
        raise InvariantViolation(f"vertex {far} lies {reach} > 2*rho={2 * rho} from the core")
    spanner = complete_spanner(g, core, 16 * rho * d, 2 * rho, dm=dm,
                               check=check_level == "per-level")
    trace.seconds["complete"] = time.perf_counter() - t1
    trace.seconds["prepare"] = t_prep

    bound = spanner_bound(rho, d)
    t2 = time.perf_counter()
    if verify == "exact":
        report = additive_stretch(g, spanner, "exact", dm=dm, bound=bound)
    elif verify == "sampled":
        report = additive_stretch(g, spanner, "sampled", count=sample_count, seed=seed,
                                  bound=bound)
    elif verify == "off":
        report = StretchReport(0, Fraction(1), (0, 0), (0, 0), 0, "off", bound, None)
    else:
        raise ValueError(f"unknown verify mode {verify!r}")
    trace.seconds["verify"] = time.perf_counter() - t2
    return spanner, report, trace


def build_from_multiplicative(g: Graph, t: SubtreeOfGraph, k: int, **kwargs
                              ) -> tuple[SubtreeOfGraph, StretchReport]:
    """Additive tree spanner from a multiplicative tree ``k``-spanner ``t``.

    Bags are tree balls of radius ``ceil(k/2)``; the measured stretch of ``t``
    must not exceed ``k``. The result obeys ``8*ceil(k/2)*(2*d + 1)``.
    """
    dm = kwargs.pop("dm", None)
    if dm is None:
        dm = apsp(g)
    measured = additive_stretch(g, t, dm=dm)
    if measured.max_multiplicative > k:
        raise PreconditionError(
            f"tree has multiplicative stretch {measured.max_multiplicative} > {k}",
            witness=measured.witness_mult)
    td = from_multiplicative_spanner(g, t, k)
    spanner, report, trace = build_spanner(g, td, dm=dm, **kwargs)
    if trace.rho > math.ceil(k / 2):
        raise InvariantViolation(f"breadth {trace.rho} exceeds ceil(k/2)={math.ceil(k / 2)}")
    return spanner, report
