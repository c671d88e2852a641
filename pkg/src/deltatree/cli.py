"""Command-line entry point: ``deltatree {delta,check-tree,realize,gen,project}``.

Exit codes: 0 success, 1 input error, 2 a relation check failed, 3 a
precondition failed (e.g. the metric is not 0-hyperbolic).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators as gen
from .errors import DeltaTreeError, NotZeroHyperbolic
from .formats import (
    emit_csv,
    emit_edge_list,
    emit_newick,
    parse_distance_csv,
    parse_edge_list,
    parse_newick,
)
from .geodesic_graph import all_pairs_shortest, delta_thin, thin_relations
from .hyperbolicity import (
    DeltaWitness,
    HyperbolicityReport,
    delta_four_point,
    delta_gromov,
    equivalence_report,
)
from .metric_space import FiniteMetricSpace, diameter
from .metric_tree import (
    MetricTree,
    TreePoint,
    betweenness_set,
    edge_point,
    project_onto_subtree,
    tree_distance,
    vertex_point,
)
from .tree_realization import REALIZE_TOL, realize_tree, verify_embedding

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_PRECONDITION = 0, 1, 2, 3

_EXTENSIONS = {
    ".csv": "csv",
    ".nwk": "newick",
    ".newick": "newick",
    ".tre": "newick",
    ".tree": "newick",
    ".edges": "edges",
    ".txt": "edges",
}


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _sniff(path: str, text: str) -> str:
    ext = Path(path).suffix.lower() if path != "-" else ""
    if ext in _EXTENSIONS:
        return _EXTENSIONS[ext]
    body = text.strip()
    if body.startswith("(") or body.endswith(";"):
        return "newick"
    first = body.split("\n", 1)[0]
    return "csv" if "," in first else "edges"


def parse_input(text: str, fmt: str):
    """Returns ``(space, graph_or_None, tree_or_None)``."""
    if fmt == "csv":
        return parse_distance_csv(text), None, None
    if fmt == "newick":
        tree = parse_newick(text)
        return all_pairs_shortest(tree.graph), tree.graph, tree
    graph = parse_edge_list(text)
    return all_pairs_shortest(graph), graph, None


def load(path: str, fmt: str | None):
    text = _read(path)
    return parse_input(text, fmt or _sniff(path, text))


def _witness_json(space: FiniteMetricSpace, w: DeltaWitness) -> dict:
    return {
        "value": w.delta,
        "witness": [space.labels[i] for i in w.quadruple],
        "witness_indices": list(w.quadruple),
    }


def _report_json(path, space, d4, d3, thin, checks) -> dict:
    out = {
        "input": path,
        "n": space.n,
        "delta_four_point": None if d4 is None else _witness_json(space, d4),
        "delta_gromov": None if d3 is None else _witness_json(space, d3),
        "diameter": diameter(space),
        "checks": [{"name": c.name, "holds": c.holds, "slack": c.slack} for c in checks],
    }
    if thin is not None:
        out["delta_thin"] = {
            "value": thin.delta,
            "witness": [space.labels[i] for i in thin.triple] if thin.point is not None else [],
            "witness_indices": list(thin.triple) if thin.point is not None else [],
            "resolution": thin.resolution,
        }
    return out


def _print_human(rep: dict, out):
    print(f"input: {rep['input']}  points: {rep['n']}  diameter: {rep['diameter']!r}", file=out)
    for key, name in (("delta_four_point", "four-point"), ("delta_gromov", "gromov")):
        if rep.get(key):
            w = rep[key]
            print(f"delta ({name}): {w['value']!r}  witness: {' '.join(w['witness'])}", file=out)
    if rep.get("delta_thin"):
        t = rep["delta_thin"]
        print(
            f"delta (thin, r={t['resolution']!r}): {t['value']!r}  triangle: {' '.join(t['witness'])}",
            file=out,
        )
    for c in rep["checks"]:
        print(f"[{'PASS' if c['holds'] else 'FAIL'}] {c['name']}  slack={c['slack']!r}", file=out)


def cmd_delta(args) -> int:
    space, graph, _ = load(args.input, args.format)
    want = args.definition
    if want == "thin" and graph is None:
        raise InputError("thin-triangle delta needs a graph or tree input (edges or newick)")
    d4 = d3 = thin = None
    checks: list = []
    if want == "all":
        rep: HyperbolicityReport = equivalence_report(
            space, tol=args.tol, probes=args.probes, seed=args.seed, workers=args.threads
        )
        d4, d3, checks = rep.delta_four_point, rep.delta_gromov, list(rep.checks)
        if graph is not None:
            tchecks, _, thin = thin_relations(graph, args.resolution, args.tol, args.subdivide)
            checks.extend(tchecks)
    elif want == "four-point":
        d4 = delta_four_point(space, args.threads)
    elif want == "gromov":
        d3 = delta_gromov(space, args.threads)
    else:
        thin = delta_thin(graph, args.resolution)
    rep_json = _report_json(args.input, space, d4, d3, thin, checks)
    if args.json:
        print(json.dumps(rep_json, indent=2))
    else:
        _print_human(rep_json, sys.stdout)
    return EXIT_CHECK if any(not c.holds for c in checks) else EXIT_OK


def cmd_check_tree(args) -> int:
    text = _read(args.input)
    fmt = args.format or _sniff(args.input, text)
    if fmt == "edges":
        graph = parse_edge_list(text)
        comps = graph.components()
        if len(comps) > 1:
            shown = "; ".join(" ".join(graph.labels[i] for i in c) for c in comps)
            print(f"not connected: {len(comps)} components: {shown}")
            return EXIT_INPUT
    space, _, _ = parse_input(text, fmt)
    w = delta_four_point(space, args.threads)
    if w.delta <= args.tol:
        print(f"tree-metric (connected; four-point delta {w.delta!r} <= {args.tol!r})")
    else:
        labels = " ".join(space.labels[i] for i in w.quadruple)
        print(f"not tree-metric: four-point delta {w.delta!r} at {labels}")
    return EXIT_OK


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_realize(args) -> int:
    space, _, _ = load(args.input, args.format)
    try:
        tree = realize_tree(space, tol=args.tol)
    except NotZeroHyperbolic as exc:
        labels = " ".join(space.labels[i] for i in exc.witness)
        print(f"error: not 0-hyperbolic: delta={exc.delta!r} at {labels}", file=sys.stderr)
        return EXIT_PRECONDITION
    err = verify_embedding(tree, space)
    _write(emit_newick(tree) + "\n" if args.out == "newick" else emit_edge_list(tree), args.output)
    print(f"max embedding error: {err!r}", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    kind, p = args.kind, args.params
    need = {"cycle": 1, "tree": 1, "grid": 2, "radial": 1, "poincare": 1, "filling": 1}[kind]
    if len(p) != need:
        raise InputError(f"gen {kind} takes {need} parameter(s), got {len(p)}")
    try:
        vals = [int(v) for v in p]
    except ValueError:
        raise InputError(f"gen {kind}: parameters must be integers, got {p}") from None
    if kind == "cycle":
        out = emit_edge_list(gen.cycle_graph(vals[0], args.length))
    elif kind == "tree":
        g = gen.random_tree(vals[0], args.seed)
        out = emit_newick(MetricTree(g)) + "\n" if args.out == "newick" else emit_edge_list(g)
    elif kind == "grid":
        out = emit_edge_list(gen.grid_graph(vals[0], vals[1]))
    elif kind == "radial":
        out = emit_csv(gen.radial_space(gen.random_radial_points(vals[0], args.seed)))
    elif kind == "poincare":
        out = emit_csv(gen.poincare_space(gen.sample_poincare(vals[0], args.seed)))
    else:
        out = emit_csv(gen.ultrametric_filling(gen.dyadic_family(vals[0])).space)
    _write(out, args.output)
    return EXIT_OK


def _parse_point(tree: MetricTree, text: str) -> TreePoint:
    """``LABEL`` or ``U:V@OFFSET`` (offset measured from U)."""
    if "@" in text and ":" in text:
        edge, off = text.rsplit("@", 1)
        u, v = edge.split(":", 1)
        return edge_point(tree, u, v, float(off))
    return vertex_point(tree, text)


def _format_point(tree: MetricTree, p: TreePoint) -> str:
    if p.is_vertex:
        return tree.labels[p.u]
    return f"{tree.labels[p.u]}:{tree.labels[p.v]}@{p.offset!r}"


def cmd_project(args) -> int:
    _, graph, tree = load(args.input, args.format)
    if graph is None:
        raise InputError("project needs a tree input (newick or edges)")
    if tree is None:
        tree = MetricTree(graph)
    p = _parse_point(tree, args.point)
    if args.segment:
        target = betweenness_set(tree, *args.segment)
    else:
        target = [tree.index(v) for v in args.subtree]
    q = project_onto_subtree(tree, p, target)
    dist = tree_distance(tree, p, q)
    if args.json:
        print(json.dumps({"point": args.point, "projection": _format_point(tree, q), "distance": dist}))
    else:
        print(f"{_format_point(tree, q)} {dist!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deltatree", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="input file, or '-' for stdin")
        p.add_argument("--format", choices=["csv", "edges", "newick"], default=None)

    p = sub.add_parser("delta", help="hyperbolicity constants and relation checks")
    add_input(p)
    p.add_argument("--def", dest="definition", default="all", choices=["gromov", "four-point", "thin", "all"])
    p.add_argument("--resolution", type=float, default=0.05)
    p.add_argument("--subdivide", type=int, default=0, help="edge subdivisions for the thin relations")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--probes", type=int, default=10, help="random subspaces for the monotonicity check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("check-tree", help="is the input a tree metric?")
    add_input(p)
    p.add_argument("--tol", type=float, default=REALIZE_TOL)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_check_tree)

    p = sub.add_parser("realize", help="realise a tree metric as a weighted tree")
    add_input(p)
    p.add_argument("--out", choices=["newick", "edges"], default="newick")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--tol", type=float, default=REALIZE_TOL)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("gen", help="generate sample inputs")
    p.add_argument("kind", choices=["radial", "poincare", "cycle", "tree", "grid", "filling"])
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=float, default=1.0, help="edge length for cycles")
    p.add_argument("--out", choices=["edges", "newick"], default="edges", help="tree output format")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("project", help="nearest-point projection in a tree")
    add_input(p)
    p.add_argument("--point", required=True, help="vertex label or U:V@OFFSET")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--segment", nargs=2, metavar=("X", "Y"))
    group.add_argument("--subtree", nargs="+", metavar="V")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_project)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotZeroHyperbolic as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (DeltaTreeError, InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
