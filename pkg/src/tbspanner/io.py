"""Text formats: PACE ``.gr`` graphs, plain edge lists, PACE ``.td`` decompositions.

PACE files number vertices from 1. Plain edge lists may use any whitespace-free
labels; all-integer labels are ordered numerically, anything else by first
appearance.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

from .graph import Graph, SubtreeOfGraph
from .treedec import TreeDecomposition

PathLike = Union[str, Path]


class ParseError(ValueError):
    def __init__(self, message, line: Optional[int] = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass
class LabelledGraph:
    graph: Graph
    labels: list[str]
    fmt: str

    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c" or parts[0][0] in "#%":
            continue
        yield no, parts


def detect_format(text: str) -> str:
    for _, parts in _content_lines(text):
        return "pace" if parts[0] == "p" else "edgelist"
    return "edgelist"


def parse_pace_graph(text: str) -> LabelledGraph:
    n = m = None
    edges = []
    for no, parts in _content_lines(text):
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second 'p' header", no)
            nums = parts[2:] if len(parts) == 4 else parts[1:]
            if len(nums) != 2:
                raise ParseError("expected 'p [tw] <n> <m>'", no)
            try:
                n, m = int(nums[0]), int(nums[1])
            except ValueError:
                raise ParseError("non-integer header field", no) from None
            continue
        if n is None:
            raise ParseError("edge before the 'p' header", no)
        if len(parts) != 2:
            raise ParseError("expected '<u> <v>'", no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer vertex id", no) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id outside 1..{n}", no)
        if u == v:
            raise ParseError(f"self-loop at {u}", no)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing 'p' header")
    g = Graph(n, edges)
    if g.m != m:
        raise ParseError(f"header declares {m} edges, file has {g.m} distinct edges")
    return LabelledGraph(g, [str(i + 1) for i in range(n)], "pace")


def parse_edgelist(text: str) -> LabelledGraph:
    pairs = []
    for no, parts in _content_lines(text):
        if len(parts) == 1:
            pairs.append((parts[0], None, no))
        elif len(parts) == 2:
            pairs.append((parts[0], parts[1], no))
        else:
            raise ParseError("expected '<u> <v>' or a lone vertex label", no)
    seen: dict[str, None] = {}
    for a, b, _ in pairs:
        seen.setdefault(a)
        if b is not None:
            seen.setdefault(b)
    labels = list(seen)
    try:
        labels.sort(key=int)
    except ValueError:
        pass
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for a, b, no in pairs:
        if b is None:
            continue
        if a == b:
            raise ParseError(f"self-loop at {a}", no)
        edges.append((index[a], index[b]))
    return LabelledGraph(Graph(len(labels), edges), labels, "edgelist")


def parse_graph(text: str, fmt: Optional[str] = None) -> LabelledGraph:
    fmt = fmt or detect_format(text)
    if fmt == "pace":
        return parse_pace_graph(text)
    if fmt == "edgelist":
        return parse_edgelist(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def read_graph(path: PathLike, fmt: Optional[str] = None) -> LabelledGraph:
    return parse_graph(Path(path).read_text(), fmt)


def format_pace_graph(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_edgelist(edges: Iterable[tuple[int, int]], labels: Optional[list[str]] = None) -> str:
    name = (lambda v: labels[v]) if labels is not None else str
    return "".join(f"{name(u)} {name(v)}\n" for u, v in sorted(edges))


def write_graph(path: PathLike, g: Graph, fmt: str = "pace", labels: Optional[list[str]] = None):
    text = format_pace_graph(g) if fmt == "pace" else format_edgelist(g.edges, labels)
    Path(path).write_text(text)


def parse_tree(text: str, host: LabelledGraph) -> Graph:
    """Edge list of a tree over ``host``'s vertex labels, as a graph on the same ids."""
    index = host.index()
    edges = []
    for no, parts in _content_lines(text):
        if len(parts) != 2:
            raise ParseError("expected '<u> <v>'", no)
        try:
            edges.append((index[parts[0]], index[parts[1]]))
        except KeyError as e:
            raise ParseError(f"unknown vertex label {e.args[0]!r}", no) from None
    return Graph(host.graph.n, edges)


def format_tree(t: SubtreeOfGraph, labels: Optional[list[str]] = None) -> str:
    return format_edgelist(t.edges, labels)


def parse_td(text: str) -> TreeDecomposition:
    """PACE ``.td``: ``s td <bags> <max bag> <n>``, ``b <id> <v>...``, then host edges."""
    header = None
    bags: dict[int, list[int]] = {}
    host_edges = []
    for no, parts in _content_lines(text):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's td' line", no)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("expected 's td <bags> <max bag size> <n>'", no)
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise ParseError("non-integer header field", no) from None
            continue
        if header is None:
            raise ParseError("content before the 's td' header", no)
        try:
            nums = [int(x) for x in parts[1:]] if parts[0] == "b" else [int(x) for x in parts]
        except ValueError:
            raise ParseError("non-integer field", no) from None
        if parts[0] == "b":
            if not nums:
                raise ParseError("bag line without an id", no)
            bid, members = nums[0], nums[1:]
            if not 1 <= bid <= header[0]:
                raise ParseError(f"bag id {bid} outside 1..{header[0]}", no)
            if bid in bags:
                raise ParseError(f"bag {bid} defined twice", no)
            for v in members:
                if not 1 <= v <= header[2]:
                    raise ParseError(f"vertex {v} outside 1..{header[2]}", no)
            bags[bid] = [v - 1 for v in members]
        else:
            if len(nums) != 2:
                raise ParseError("expected a host edge '<bag> <bag>'", no)
            a, b = nums
            if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                raise ParseError(f"host edge {a}-{b} names an unknown bag", no)
            host_edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing 's td' header")
    count, _, n = header
    missing = [i for i in range(1, count + 1) if i not in bags]
    if missing:
        raise ParseError(f"bags {missing[:5]} declared but not defined")
    try:
        host = Graph(count, host_edges)
    except ValueError as e:
        raise ParseError(str(e)) from None
    for i in range(count):
        if not bags[i + 1] and count > 1 and host.degree(i) == 0:
            raise ParseError(f"bag {i + 1} is empty and attached to nothing")
    return TreeDecomposition(host, [bags[i + 1] for i in range(count)], n)


def read_td(path: PathLike) -> TreeDecomposition:
    return parse_td(Path(path).read_text())


def format_td(td: TreeDecomposition) -> str:
    width = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td)} {width} {td.g_n}"]
    for i, bag in enumerate(td.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.host_tree.edges]
    return "\n".join(lines) + "\n"


def write_td(path: PathLike, td: TreeDecomposition):
    Path(path).write_text(format_td(td))
