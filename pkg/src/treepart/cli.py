"""Command-line front end.

Exit codes: 0 success, 1 asserted invariant violated, 2 input error,
3 budget or capacity exhausted (partial output written).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import CSV_HEADER, audit
from .construct import construct_tree_partition
from .decomp import treewidth_exact, treewidth_heuristic, verify_tree_decomposition
from .errors import CapacityError, InputError
from .experiment import ExperimentPlan, run_experiment, standard_plan
from .fileio import read_graph, read_td, read_tp, to_dot, write_graph, write_td, write_tp
from .generators import FAMILIES, gen_family
from .graph import is_connected, max_degree
from .partition import exact_tpw, verify_tree_partition

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None
    return read_graph(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from None


def cmd_gen(args) -> int:
    params = {}
    for key in ("n", "k", "delta", "max_degree"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.p is not None:
        params["p"] = args.p
    g, meta = gen_family(args.family, params, args.seed)
    if args.format == "dot":
        labels = [str(x) for x in meta.vertex_labels] if meta.vertex_labels else None
        _emit(to_dot(g, labels=labels), args.output)
    else:
        _emit(write_graph(g, meta), args.output)
    return EXIT_OK


def cmd_tdecomp(args) -> int:
    g, _ = _load_graph(args.graph)
    if args.exact:
        try:
            _, td = treewidth_exact(g)
        except CapacityError as exc:
            print(f"error: {exc}", file=sys.stderr)
            _emit(write_td(treewidth_heuristic(g), g.n), args.output)
            return EXIT_BUDGET
    else:
        td = treewidth_heuristic(g)
    _emit(write_td(td, g.n), args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    g, _ = _load_graph(args.graph)
    if args.td:
        td, n = read_td(_read(args.td))
        if n != g.n:
            raise InputError(f"decomposition is for n={n}, graph has n={g.n}")
    else:
        td = treewidth_heuristic(g)
    delta = args.delta if args.delta is not None else max(max_degree(g), 1)
    trace_file = None
    records = []
    if args.trace:
        trace_file = open(args.trace, "w") if args.trace != "-" else sys.stderr
    try:
        tp = construct_tree_partition(g, td, delta, trace=records.append if trace_file else None)
    finally:
        if trace_file is not None:
            for rec in records:
                trace_file.write(json.dumps(rec, sort_keys=True) + "\n")
            if trace_file is not sys.stderr:
                trace_file.close()
    if args.format == "dot":
        _emit(to_dot(g, tp), args.output)
    else:
        _emit(write_tp(tp), args.output)
    return EXIT_OK


def cmd_exact(args) -> int:
    g, _ = _load_graph(args.graph)
    if not is_connected(g):
        raise InputError("exact search needs a connected graph")
    budget = args.budget_ms / 1000 if args.budget_ms is not None else None
    res = exact_tpw(g, max_n=args.max_n, time_budget=budget, node_budget=args.budget_nodes,
                    chordal_pruning=args.chordal_pruning)
    text = write_tp(res.partition)
    if not res.complete:
        text = f"c incomplete lower_bound={res.lower_bound}\n" + text
    _emit(text, args.output)
    if not res.complete:
        print(f"search budget exhausted: tpw >= {res.lower_bound}, best witness width {res.width}",
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args) -> int:
    g, _ = _load_graph(args.graph)
    if not args.td and not args.tp:
        raise InputError("verify needs --td or --tp")
    ok = True
    if args.td:
        td, _ = read_td(_read(args.td))
        res = verify_tree_decomposition(g, td)
        print(f"td: ok, width {res.width}" if res else f"td: violated {res.axiom}: {res.message}")
        ok = ok and bool(res)
    if args.tp:
        tp = read_tp(_read(args.tp))
        res = verify_tree_partition(g, tp)
        print(f"tp: ok, width {res.width}" if res else f"tp: violated {res.axiom}: {res.message}")
        ok = ok and bool(res)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_audit(args) -> int:
    g, meta = _load_graph(args.graph)
    budget = args.budget_ms / 1000 if args.budget_ms is not None else None
    rep = audit(g, meta, max_n=args.max_n, time_budget=budget, node_budget=args.budget_nodes)
    if args.format == "csv":
        _emit(CSV_HEADER + "\n" + rep.csv_row() + "\n", args.output)
    else:
        lines = [f"{k}: {v}" for k, v in sorted(rep.flags.items())]
        lines.insert(0, rep.csv_row())
        lines += [f"note: {n}" for n in rep.notes]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_experiment(args) -> int:
    if args.plan == "standard":
        plan = standard_plan(seed=args.seed)
    else:
        plan = ExperimentPlan.from_json(_read(args.plan))
    if args.budget_nodes is not None:
        plan.node_budget = args.budget_nodes
    if args.budget_ms is not None:
        plan.time_budget = args.budget_ms / 1000
    if args.max_n is not None:
        plan.max_n = args.max_n
    plan.output = None
    text, status = run_experiment(plan, workers=args.workers)
    _emit(text, args.output)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="treepart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph family instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tdecomp", help="compute a tree decomposition")
    p.add_argument("graph")
    p.add_argument("--exact", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tdecomp)

    p = sub.add_parser("construct", help="build a bounded-width tree-partition")
    p.add_argument("graph")
    p.add_argument("--td", help="tree decomposition file (default: heuristic)")
    p.add_argument("--delta", type=int, help="degree bound (default: max degree)")
    p.add_argument("--trace", metavar="FILE", help="write the recursion trace as JSON lines")
    p.add_argument("--format", choices=["text", "dot"], default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("exact", help="exact tree-partition-width search")
    p.add_argument("graph")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--budget-ms", type=int)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--chordal-pruning", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="verify a decomposition or tree-partition")
    p.add_argument("graph")
    p.add_argument("--td")
    p.add_argument("--tp")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="check every applicable bound on one graph")
    p.add_argument("graph")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--budget-ms", type=int)
    p.add_argument("--budget-nodes", type=int, default=200_000)
    p.add_argument("--format", choices=["text", "csv"], default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("experiment", help="audit a plan of instances into CSV")
    p.add_argument("plan", help="plan JSON file, or 'standard' for the built-in suite")
    p.add_argument("--seed", type=int, default=0, help="seed offset for the standard suite")
    p.add_argument("--max-n", type=int)
    p.add_argument("--budget-ms", type=int)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
