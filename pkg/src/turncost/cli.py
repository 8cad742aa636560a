"""Command-line interface.

Exit codes: 0 success (or yes), 1 no / none found, 2 input error, 3 resource
limit exceeded.  Identical inputs always produce byte-identical outputs.
"""
from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .core import (
    CircuitError,
    Graph,
    NotEulerianError,
    TurningCostTable,
    circuit_cost,
    validate_circuit,
)
from .fileio import (
    GraphDocument,
    ParseError,
    emit_circuit,
    emit_graph,
    emit_tsp,
    export_dot,
    format_rational,
    parse_circuit,
    parse_graph,
    parse_rational,
)
from .gadget import CnfFormula, GadgetGraph, build_gadget, extract_assignment, normalize_mod4, parse_cnf
from .blowup import blow_up
from .planar import crossings_forbidden, min_cost_atrail
from .reduction import line_graph_weighted, subdivide_twice
from .solvers import (
    DEFAULT_MAX_BITMASK,
    InstanceTooLargeError,
    SolveResult,
    TooLargeError,
    decide_budget,
    oracle_min_circuit,
    solve_via_tsp,
    zero_cost_circuit,
)

ENV_MAX_BITMASK = "TURNCOST_MAX_BITMASK"


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _default_max_bitmask() -> int:
    raw = os.environ.get(ENV_MAX_BITMASK)
    if raw is None:
        return DEFAULT_MAX_BITMASK
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_MAX_BITMASK} must be an integer, got {raw!r}") from None


def _auto_solve(doc: GraphDocument, max_bitmask: int) -> SolveResult:
    """Planar fast path when available, else oracle, else the TSP route."""
    if (
        doc.plane is not None
        and all(doc.graph.degree(v) == 4 for v in doc.graph.vertices)
        and crossings_forbidden(doc.plane, doc.table)
    ):
        return min_cost_atrail(doc.plane, doc.table)
    try:
        return oracle_min_circuit(doc.graph, doc.table)
    except InstanceTooLargeError:
        return solve_via_tsp(doc.graph, doc.table, contract=True, max_nodes=max_bitmask)


def _cmd_solve(args) -> int:
    doc = parse_graph(_read(args.graph))
    max_bitmask = args.max_bitmask
    if args.method == "zerocost":
        circuit = zero_cost_circuit(doc.graph, doc.table)
        if circuit is None:
            print("none")
            return 1
        print("0/1")
        if args.circuit_out:
            _write(args.circuit_out, emit_circuit(doc.name, circuit))
        return 0
    if args.method == "oracle":
        result = oracle_min_circuit(doc.graph, doc.table)
    elif args.method == "tsp":
        result = solve_via_tsp(doc.graph, doc.table, contract=args.contract, max_nodes=max_bitmask)
    else:
        result = _auto_solve(doc, max_bitmask)
    print(format_rational(result.cost))
    if args.circuit_out:
        _write(args.circuit_out, emit_circuit(doc.name, result.circuit))
    return 0


def _cmd_decide(args) -> int:
    doc = parse_graph(_read(args.graph))
    budget = parse_rational(args.budget)
    if decide_budget(doc.graph, doc.table, budget):
        print("yes")
        return 0
    print("no")
    return 1


def _cmd_atrail(args) -> int:
    doc = parse_graph(_read(args.graph))
    if doc.plane is None:
        raise ParseError("atrail needs rotation lines in the instance file")
    result = min_cost_atrail(doc.plane, doc.table)
    print(format_rational(result.cost))
    if args.circuit_out:
        _write(args.circuit_out, emit_circuit(doc.name, result.circuit))
    return 0


def _gadget_header(g: GadgetGraph) -> str:
    lines = [f"# cnf {g.formula.num_vars}"]
    for clause in g.formula.clauses:
        lits = " ".join(str(v if sign else -v) for v, sign in clause)
        lines.append(f"# clause {lits}")
    lines.append(f"# normalized {int(g.normalized)}")
    return "\n".join(lines) + "\n"


def _rebuild_gadget_from_header(text: str) -> GadgetGraph:
    num_vars = None
    clauses = []
    normalized = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line.startswith("#"):
            continue
        fields = line[1:].split()
        if not fields:
            continue
        if fields[0] == "cnf" and len(fields) == 2:
            num_vars = int(fields[1])
        elif fields[0] == "clause" and len(fields) == 4:
            clauses.append(tuple((abs(int(t)), int(t) > 0) for t in fields[1:]))
        elif fields[0] == "normalized" and len(fields) == 2:
            normalized = bool(int(fields[1]))
    if num_vars is None or not clauses:
        raise ParseError("file carries no gadget header comments")
    gadget = build_gadget(CnfFormula(num_vars, tuple(clauses)))
    if normalized:
        gadget = normalize_mod4(gadget)
    return gadget


def _load_gadget(path: str) -> GadgetGraph:
    text = _read(path)
    doc = parse_graph(text)
    gadget = _rebuild_gadget_from_header(text)
    if gadget.graph != doc.graph or gadget.table != doc.table:
        raise ParseError("graph file does not match its gadget header")
    return gadget


def _cmd_gadget(args) -> int:
    formula = parse_cnf(_read(args.cnf))
    gadget = build_gadget(formula)
    if args.normalize_mod4:
        gadget = normalize_mod4(gadget)
    doc = GraphDocument(args.name, gadget.graph, gadget.table, None)
    _write(args.output, _gadget_header(gadget) + emit_graph(doc))
    return 0


def _cmd_extract(args) -> int:
    gadget = _load_gadget(args.graph)
    _, circuit = parse_circuit(_read(args.circuit))
    validate_circuit(gadget.graph, circuit)
    assignment = extract_assignment(gadget, circuit)
    for var in sorted(assignment):
        print(f"x{var}={'true' if assignment[var] else 'false'}")
    return 0


def _cmd_blowup(args) -> int:
    gadget = _load_gadget(args.graph)
    if args.normalize_mod4:
        gadget = normalize_mod4(gadget)
    blown = blow_up(gadget)
    doc = GraphDocument(args.name, blown.graph, blown.table, None)
    _write(args.output, emit_graph(doc))
    return 0


def _cmd_reduce(args) -> int:
    doc = parse_graph(_read(args.graph))
    line = line_graph_weighted(subdivide_twice(doc.graph, doc.table))
    _write(args.output, emit_tsp(doc.name, line.graph))
    return 0


def _cmd_verify(args) -> int:
    doc = parse_graph(_read(args.graph))
    _, circuit = parse_circuit(_read(args.circuit))
    validate_circuit(doc.graph, circuit)
    print(format_rational(circuit_cost(doc.graph, doc.table, circuit)))
    return 0


def _cmd_export_dot(args) -> int:
    doc = parse_graph(_read(args.graph))
    circuit = None
    if args.circuit:
        _, circuit = parse_circuit(_read(args.circuit))
        validate_circuit(doc.graph, circuit)
    text = export_dot(doc.graph, circuit, doc.name)
    if args.output:
        _write(args.output, text)
    else:
        print(text, end="")
    return 0


def _cmd_report(args) -> int:
    from . import report

    if args.kind == "scaling":
        paths = report.write_scaling_report(args.output, seed=args.seed)
    else:
        paths = report.write_agreement_report(
            args.output, seed=args.seed, instances=args.instances
        )
    for p in paths:
        print(p)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turncost",
        description="Exact minimum turning-cost Eulerian circuit solvers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum-cost circuit of an instance file")
    p.add_argument("graph")
    p.add_argument("--method", choices=("auto", "oracle", "tsp", "zerocost"), default="auto")
    p.add_argument("--max-bitmask", type=int, default=None)
    p.add_argument("--contract", action="store_true", help="forced-path contraction for --method tsp")
    p.add_argument("--circuit-out", metavar="FILE")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("decide", help="is there a circuit within the cost budget?")
    p.add_argument("graph")
    p.add_argument("--budget", required=True, metavar="P/Q")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("atrail", help="polynomial fast path for 4-regular plane instances")
    p.add_argument("graph")
    p.add_argument("--circuit-out", metavar="FILE")
    p.set_defaults(func=_cmd_atrail)

    p = sub.add_parser("gadget", help="compile a DIMACS 3-CNF file to an instance")
    p.add_argument("cnf")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--name", default="gadget")
    p.add_argument("--normalize-mod4", action="store_true")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("extract", help="read a satisfying assignment off a zero-cost circuit")
    p.add_argument("graph")
    p.add_argument("circuit")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("blowup", help="reduce a gadget's maximum degree to 8")
    p.add_argument("graph")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--name", default="blowup")
    p.add_argument("--normalize-mod4", action="store_true")
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("reduce", help="export the weighted line-graph TSP instance")
    p.add_argument("graph")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="validate a circuit file and print its cost")
    p.add_argument("graph")
    p.add_argument("circuit")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("export-dot", help="emit the graph in dot language")
    p.add_argument("graph")
    p.add_argument("--circuit", metavar="FILE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_export_dot)

    p = sub.add_parser("report", help="write a CSV study plus rendered figures")
    p.add_argument("kind", choices=("scaling", "agreement"))
    p.add_argument("-o", "--output", required=True, metavar="DIR")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=50)
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_bitmask", None) is None and hasattr(args, "max_bitmask"):
        args.max_bitmask = _default_max_bitmask()
    try:
        return args.func(args)
    except (InstanceTooLargeError, TooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
