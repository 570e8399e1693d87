"""Command line: ``tbspanner {build,verify,decomp,tree-metrics,gen}``.

Exit codes
    0  success (and any requested bound holds)
    2  input could not be parsed
    3  graph is disconnected
    4  invalid decomposition, or tree file is not a spanning tree
    5  additive bound violated
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from . import generators as gen
from .graph import Graph, apsp, is_connected
from .io import (LabelledGraph, ParseError, format_pace_graph, format_td, format_edgelist,
                 parse_tree, read_graph, read_td, write_td)
from .spanner import InvariantViolation, PreconditionError, build_spanner
from .tree_metrics import nested_sequence, pbt_bruteforce
from .treedec import (InvalidDecomposition, breadth, from_multiplicative_spanner,
                      heuristic_layering_decomposition, is_tree, normalize, validate)
from .verify import (NotASpanningTree, additive_stretch, is_spanning_tree,
                     multiplicative_stretch)

EXIT_OK, EXIT_PARSE, EXIT_DISCONNECTED, EXIT_INVALID, EXIT_BOUND = 0, 2, 3, 4, 5
PER_LEVEL_LIMIT = 5000
PBT_LIMIT = 500


class CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _emit(obj, out_path=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out_path:
        Path(out_path).write_text(text + "\n")
    else:
        print(text)


def _load_graph(path, fmt=None) -> LabelledGraph:
    try:
        return read_graph(path, fmt)
    except (ParseError, ValueError) as e:
        raise CliError(EXIT_PARSE, f"{path}: {e}") from None
    except OSError as e:
        raise CliError(EXIT_PARSE, str(e)) from None


def _load_td(path):
    try:
        return read_td(path)
    except (ParseError, ValueError) as e:
        raise CliError(EXIT_PARSE, f"{path}: {e}") from None
    except OSError as e:
        raise CliError(EXIT_PARSE, str(e)) from None


def _load_tree(path, host: LabelledGraph) -> Graph:
    try:
        return parse_tree(Path(path).read_text(), host)
    except (ParseError, ValueError) as e:
        raise CliError(EXIT_PARSE, f"{path}: {e}") from None
    except OSError as e:
        raise CliError(EXIT_PARSE, str(e)) from None


def _require_connected(g: Graph):
    if g.n == 0 or not is_connected(g):
        raise CliError(EXIT_DISCONNECTED, "graph is disconnected")


def _require_valid(td, g):
    if td.g_n != g.n:
        raise CliError(EXIT_INVALID, f"decomposition is for {td.g_n} vertices, graph has {g.n}")
    try:
        problems = validate(td, g)
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e)) from None
    if problems:
        raise CliError(EXIT_INVALID, str(InvalidDecomposition(problems)))


def _stretch_args(args):
    if args.sampled:
        return "sampled", args.sampled
    return "exact", None


def cmd_build(args) -> int:
    lg = _load_graph(args.graph, args.format)
    g = lg.graph
    _require_connected(g)
    if args.td:
        td = _load_td(args.td)
        _require_valid(td, g)
        provenance = "given-decomposition"
    else:
        td = heuristic_layering_decomposition(g)
        provenance = "heuristic"
    check = args.check_level or ("per-level" if g.n < PER_LEVEL_LIMIT else "off")
    mode, count = _stretch_args(args)
    try:
        spanner, report, trace = build_spanner(
            g, td, check_level=check, verify=mode, sample_count=count or 10_000, seed=args.seed,
            final_path_length=args.final_path_length)
    except InvalidDecomposition as e:
        raise CliError(EXIT_INVALID, str(e)) from None
    except (InvariantViolation, PreconditionError) as e:
        raise CliError(EXIT_BOUND, f"construction guarantee failed: {e}") from None
    if args.out_tree:
        Path(args.out_tree).write_text(format_edgelist(spanner.edges, lg.labels))
    _emit({
        "schema": 1,
        "tool": "tbspanner",
        "version": __version__,
        "command": "build",
        "seed": args.seed,
        "provenance": provenance,
        "decomposition": "file" if args.td else "heuristic-layering",
        "check_level": check,
        "n": g.n,
        "m": g.m,
        "rho": trace.rho,
        "d": trace.d,
        "bound": report.bound_checked,
        "stretch": report.to_dict(),
        "trace": trace.to_dict(),
    }, args.out_report)
    return EXIT_OK if report.bound_holds is not False else EXIT_BOUND


def cmd_verify(args) -> int:
    lg = _load_graph(args.graph, args.format)
    g = lg.graph
    tree = _load_tree(args.tree, lg)
    if not is_spanning_tree(g, tree):
        raise CliError(EXIT_INVALID, "tree file is not a spanning tree of the graph")
    mode, count = _stretch_args(args)
    report = additive_stretch(g, tree, mode, count=count or 10_000, seed=args.seed,
                              bound=args.bound)
    out = report.to_dict()
    out.update({"tool": "tbspanner", "version": __version__, "command": "verify",
                "seed": args.seed, "provenance": "external-tree"})
    out["witness_add"] = [lg.labels[v] for v in report.witness_add]
    out["witness_mult"] = [lg.labels[v] for v in report.witness_mult]
    _emit(out, args.out_report)
    return EXIT_BOUND if report.bound_holds is False else EXIT_OK


def cmd_decomp(args) -> int:
    if args.action == "normalize":
        td = _load_td(args.td)
        text = format_td(normalize(td))
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    lg = _load_graph(args.graph, args.format)
    g = lg.graph
    if args.action == "from-spanner":
        _require_connected(g)
        tree = _load_tree(args.tree, lg)
        if not is_spanning_tree(g, tree):
            raise CliError(EXIT_INVALID, "tree file is not a spanning tree of the graph")
        measured = multiplicative_stretch(g, tree)
        k = args.k if args.k is not None else math.ceil(measured)
        if measured > k:
            raise CliError(EXIT_INVALID, f"tree has multiplicative stretch {measured} > {k}")
        td = from_multiplicative_spanner(g, tree, k)
        if args.out:
            write_td(args.out, td)
        else:
            sys.stdout.write(format_td(td))
        print(json.dumps({"k": k, "measured_stretch": float(measured),
                          "radius": math.ceil(k / 2), "nodes": len(td)}), file=sys.stderr)
        return EXIT_OK

    td = _load_td(args.td)
    if args.action == "validate":
        try:
            problems = validate(td, g)
        except ValueError as e:
            _emit({"valid": False, "violations": [str(e)]})
            return EXIT_INVALID
        _emit({"valid": not problems, "violations": [str(p) for p in problems]})
        return EXIT_OK if not problems else EXIT_INVALID
    if args.action == "breadth":
        _require_valid(td, g)
        dm = apsp(g) if g.n <= PER_LEVEL_LIMIT else None
        _emit({"breadth": breadth(td, g, dm), "nodes": len(td),
               "normalized_nodes": len(normalize(td))})
        return EXIT_OK
    raise CliError(EXIT_PARSE, f"unknown decomp action {args.action}")


def cmd_tree_metrics(args) -> int:
    lg = _load_graph(args.tree, args.format)
    t = lg.graph
    if not is_tree(t):
        raise CliError(EXIT_INVALID, "input is not a tree")
    seq = nested_sequence(t, args.final_path_length)
    out = {"n": t.n, "d": seq.d, "level_sizes": seq.level_sizes(),
           "levels": [sorted(lg.labels[v] for v in lv) for lv in seq.levels] if args.levels else None,
           "pbt": pbt_bruteforce(t) if t.n <= PBT_LIMIT else None,
           "log_bound": math.log2(t.n + 1) - 1}
    _emit(out)
    return EXIT_OK


FAMILIES = {
    "snowflake": (gen.snowflake, 1),
    "path": (gen.path, 1),
    "cycle": (gen.cycle, 1),
    "star": (gen.star, 1),
    "complete": (gen.complete, 1),
    "grid": (gen.grid, 2),
    "complete-binary-tree": (gen.complete_binary_tree, 1),
    "random-tree": (None, 1),
    "random-connected": (None, 2),
}


def cmd_gen(args) -> int:
    make, arity = FAMILIES[args.family]
    if len(args.params) != arity:
        raise CliError(EXIT_PARSE, f"{args.family} takes {arity} integer parameter(s)")
    try:
        if args.family == "random-tree":
            g = gen.random_tree(*args.params, seed=args.seed)
        elif args.family == "random-connected":
            g = gen.random_connected(*args.params, seed=args.seed)
        else:
            g = make(*args.params)
    except ValueError as e:
        raise CliError(EXIT_PARSE, str(e)) from None
    text = format_pace_graph(g) if args.format != "edgelist" else format_edgelist(g.edges)
    if args.out_graph:
        Path(args.out_graph).write_text(text)
    else:
        sys.stdout.write(text)
    if args.out_td:
        if args.family == "snowflake":
            td = gen.snowflake_decomposition(*args.params)
        else:
            td = heuristic_layering_decomposition(g)
        write_td(args.out_td, td)
    print(json.dumps({"family": args.family, "params": args.params, "n": g.n, "m": g.m,
                      "seed": args.seed}), file=sys.stderr)
    return EXIT_OK


def _add_stretch_flags(p):
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--exact", action="store_true", help="check every pair (default)")
    grp.add_argument("--sampled", type=int, metavar="N", help="check N seeded random pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-report", help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tbspanner",
                                     description="Additive tree spanners from tree decompositions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["pace", "edgelist"], default=None,
               help="graph file format (default: detect)")

    p = sub.add_parser("build", help="build an additive tree spanner")
    p.add_argument("graph")
    p.add_argument("--td", help="PACE .td decomposition (default: layering heuristic)")
    p.add_argument("--check-level", choices=["off", "final", "per-level"])
    p.add_argument("--out-tree")
    p.add_argument("--format", **fmt)
    p.add_argument("--final-path-length", type=int, default=3, help=argparse.SUPPRESS)
    _add_stretch_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="measure the stretch of a spanning tree")
    p.add_argument("graph")
    p.add_argument("tree")
    p.add_argument("--bound", type=int)
    p.add_argument("--format", **fmt)
    _add_stretch_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decomp", help="tree decomposition utilities")
    dsub = p.add_subparsers(dest="action", required=True)
    for action in ("validate", "breadth"):
        q = dsub.add_parser(action)
        q.add_argument("graph")
        q.add_argument("td")
        q.add_argument("--format", **fmt)
    q = dsub.add_parser("normalize")
    q.add_argument("td")
    q.add_argument("--out")
    q = dsub.add_parser("from-spanner")
    q.add_argument("graph")
    q.add_argument("tree")
    q.add_argument("--k", type=int, help="stretch factor (default: measured, rounded up)")
    q.add_argument("--out")
    q.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("tree-metrics", help="nested sequence depth and pbt of a tree")
    p.add_argument("tree")
    p.add_argument("--levels", action="store_true", help="list the nodes of every level")
    p.add_argument("--final-path-length", type=int, default=3, choices=[2, 3])
    p.add_argument("--format", **fmt)
    p.set_defaults(func=cmd_tree_metrics)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-graph")
    p.add_argument("--out-td")
    p.add_argument("--format", choices=["pace", "edgelist"], default="pace")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"tbspanner: {e}", file=sys.stderr)
        return e.code
    except NotASpanningTree as e:
        print(f"tbspanner: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
