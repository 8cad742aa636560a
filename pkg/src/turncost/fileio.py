"""Line-oriented instance files, circuit files, TSP exports, and dot output.

Rationals are always serialized as ``p/q`` (including ``0/1``) so files round
trip exactly.  Half-edges are spelled ``<edge-id>.<end>``; since the end is
always the final dot-separated token, edge ids may themselves contain dots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import FORBIDDEN, Circuit, Graph, HalfEdge, TurningCostTable
from .planar import InvalidRotationError, PlaneGraph
from .reduction import WeightedGraph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line else ""
        super().__init__(f"{where}{message}")


class DanglingReferenceError(ParseError):
    pass


class DuplicateIdError(ParseError):
    pass


@dataclass
class GraphDocument:
    name: str
    graph: Graph
    table: TurningCostTable
    plane: PlaneGraph | None


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(token: str, line: int | None = None) -> Fraction:
    parts = token.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            p, q = int(parts[0]), int(parts[1])
            if q <= 0:
                raise ParseError(f"denominator must be positive in {token!r}", line)
            return Fraction(p, q)
    except ValueError:
        pass
    raise ParseError(f"bad rational literal {token!r}", line)


def format_half_edge(h: HalfEdge) -> str:
    return f"{h[0]}.{h[1]}"


def parse_half_edge(token: str, line: int | None = None) -> HalfEdge:
    eid, _, end = token.rpartition(".")
    if end not in ("0", "1") or not eid:
        raise ParseError(f"bad half-edge {token!r}; expected <edge>.<0|1>", line)
    return (eid, int(end))


def parse_graph(text: str) -> GraphDocument:
    """Parse an instance file.  Record order does not matter.

    Never crashes on arbitrary input: every failure is a ParseError carrying
    the offending line number.
    """
    name = None
    vertex_lines: list[tuple[int, str]] = []
    edge_lines: list[tuple[int, str, str, str]] = []
    rotation_lines: list[tuple[int, str, list[str]]] = []
    cost_lines: list[tuple[int, list[str]]] = []
    outer: tuple[int, int] | None = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind, args = fields[0], fields[1:]
        if kind == "graph":
            if len(args) != 1:
                raise ParseError("graph line takes exactly one name", no)
            if name is not None:
                raise DuplicateIdError("second graph line", no)
            name = args[0]
        elif kind == "vertex":
            if len(args) != 1:
                raise ParseError("vertex line takes exactly one id", no)
            vertex_lines.append((no, args[0]))
        elif kind == "edge":
            if len(args) != 3:
                raise ParseError("edge line takes id and two endpoints", no)
            edge_lines.append((no, *args))
        elif kind == "rotation":
            if len(args) < 2:
                raise ParseError("rotation line needs a vertex and half-edges", no)
            rotation_lines.append((no, args[0], args[1:]))
        elif kind == "outer":
            if len(args) != 1:
                raise ParseError("outer line takes one face index", no)
            if outer is not None:
                raise DuplicateIdError("second outer line", no)
            try:
                outer = (no, int(args[0]))
            except ValueError:
                raise ParseError(f"bad face index {args[0]!r}", no) from None
        elif kind == "cost":
            if len(args) != 4:
                raise ParseError("cost line takes vertex, two half-edges, value", no)
            cost_lines.append((no, args))
        else:
            raise ParseError(f"unknown record {kind!r}", no)

    vertices: list[str] = []
    seen_v: set[str] = set()
    for no, vid in vertex_lines:
        if vid in seen_v:
            raise DuplicateIdError(f"vertex {vid!r} declared twice", no)
        seen_v.add(vid)
        vertices.append(vid)
    edges: list[tuple[str, str, str]] = []
    seen_e: set[str] = set()
    for no, eid, u, v in edge_lines:
        if eid in seen_e:
            raise DuplicateIdError(f"edge {eid!r} declared twice", no)
        seen_e.add(eid)
        for w in (u, v):
            if w not in seen_v:
                raise DanglingReferenceError(f"edge {eid!r} references unknown vertex {w!r}", no)
        edges.append((eid, u, v))
    graph = Graph(vertices, edges)

    def checked_half(token: str, at_vertex: str, no: int) -> HalfEdge:
        h = parse_half_edge(token, no)
        if not graph.has_half_edge(h):
            raise DanglingReferenceError(f"unknown half-edge {token!r}", no)
        if graph.vertex_of(h) != at_vertex:
            raise DanglingReferenceError(
                f"half-edge {token!r} is not attached at {at_vertex!r}", no
            )
        return h

    records = []
    seen_cost: set[tuple[str, frozenset]] = set()
    for no, (vid, ta, tb, tv) in cost_lines:
        if vid not in seen_v:
            raise DanglingReferenceError(f"cost at unknown vertex {vid!r}", no)
        a = checked_half(ta, vid, no)
        b = checked_half(tb, vid, no)
        if a == b:
            raise ParseError("cost pairing repeats one half-edge", no)
        key = (vid, frozenset((a, b)))
        if key in seen_cost:
            raise DuplicateIdError("duplicate cost entry", no)
        seen_cost.add(key)
        value = FORBIDDEN if tv == "forbid" else parse_rational(tv, no)
        if value is not FORBIDDEN and value < 0:
            raise ParseError("turning costs must be non-negative", no)
        records.append((vid, a, b, value))
    table = TurningCostTable(records)

    plane = None
    if rotation_lines:
        rotation: dict[str, tuple[HalfEdge, ...]] = {}
        for no, vid, tokens in rotation_lines:
            if vid not in seen_v:
                raise DanglingReferenceError(f"rotation at unknown vertex {vid!r}", no)
            if vid in rotation:
                raise DuplicateIdError(f"second rotation for {vid!r}", no)
            halves = tuple(checked_half(t, vid, no) for t in tokens)
            if sorted(halves) != sorted(graph.half_edges_at(vid)):
                raise ParseError(
                    f"rotation at {vid!r} must list its incident half-edges once each", no
                )
            rotation[vid] = halves
        missing = set(graph.vertices) - set(rotation)
        if missing:
            raise ParseError(f"no rotation given for vertex {sorted(missing)[0]!r}")
        try:
            plane = PlaneGraph(graph, rotation, outer[1] if outer else 0)
        except InvalidRotationError as exc:
            raise ParseError(str(exc), outer[0] if outer else None) from None
    elif outer is not None:
        raise ParseError("outer face declared without rotation lines", outer[0])
    return GraphDocument(name or "g", graph, table, plane)


def emit_graph(doc: GraphDocument) -> str:
    out = [f"graph {doc.name}"]
    for v in doc.graph.vertices:
        out.append(f"vertex {v}")
    for eid, u, v in doc.graph.edges:
        out.append(f"edge {eid} {u} {v}")
    if doc.plane is not None:
        for v in doc.graph.vertices:
            halves = " ".join(format_half_edge(h) for h in doc.plane.rotation[v])
            out.append(f"rotation {v} {halves}")
        out.append(f"outer {doc.plane.outer_index}")
    for v, a, b, value in doc.table.records():
        spelled = "forbid" if value is FORBIDDEN else format_rational(value)
        out.append(f"cost {v} {format_half_edge(a)} {format_half_edge(b)} {spelled}")
    return "\n".join(out) + "\n"


def parse_circuit(text: str) -> tuple[str, Circuit]:
    name = None
    halves: list[HalfEdge] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if name is None:
            if fields[0] != "circuit" or len(fields) != 2:
                raise ParseError("expected a 'circuit <name>' header", no)
            name = fields[1]
            continue
        for token in fields:
            halves.append(parse_half_edge(token, no))
    if name is None:
        raise ParseError("missing circuit header")
    return name, tuple(halves)


def emit_circuit(name: str, circuit: Circuit) -> str:
    body = " ".join(format_half_edge(h) for h in circuit)
    return f"circuit {name}\n{body}\n" if circuit else f"circuit {name}\n"


def emit_tsp(name: str, t: WeightedGraph) -> str:
    out = [f"tsp {name}"]
    for node in t.nodes:
        out.append(f"node {node}")
    for pair in sorted(t.weights, key=sorted):
        a, b = sorted(pair)
        out.append(f"arc {a} {b} {format_rational(t.weights[pair])}")
    return "\n".join(out) + "\n"


def parse_tsp(text: str) -> tuple[str, WeightedGraph]:
    name = None
    nodes: list[str] = []
    weights: dict[frozenset, Fraction] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind, args = fields[0], fields[1:]
        if kind == "tsp":
            if name is not None or len(args) != 1:
                raise ParseError("bad tsp header", no)
            name = args[0]
        elif kind == "node":
            if len(args) != 1:
                raise ParseError("node line takes one id", no)
            if args[0] in nodes:
                raise DuplicateIdError(f"node {args[0]!r} declared twice", no)
            nodes.append(args[0])
        elif kind == "arc":
            if len(args) != 3:
                raise ParseError("arc line takes two nodes and a weight", no)
            a, b, tv = args
            for x in (a, b):
                if x not in nodes:
                    raise DanglingReferenceError(f"arc references unknown node {x!r}", no)
            if a == b:
                raise ParseError("arcs must join distinct nodes", no)
            key = frozenset((a, b))
            if key in weights:
                raise DuplicateIdError("duplicate arc", no)
            weights[key] = parse_rational(tv, no)
        else:
            raise ParseError(f"unknown record {kind!r}", no)
    if name is None:
        raise ParseError("missing tsp header")
    return name, WeightedGraph(tuple(nodes), weights)


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: Graph, circuit: Circuit | None = None, name: str = "g") -> str:
    """Graph in dot language; a circuit annotates each edge with its position."""
    position: dict[str, int] = {}
    if circuit is not None:
        position = {h[0]: i + 1 for i, h in enumerate(circuit)}
    out = [f"graph {_dot_quote(name)} {{"]
    for v in g.vertices:
        out.append(f"  {_dot_quote(v)};")
    for eid, u, v in g.edges:
        label = eid if eid not in position else f"{eid} ({position[eid]})"
        out.append(f"  {_dot_quote(u)} -- {_dot_quote(v)} [label={_dot_quote(label)}];")
    out.append("}")
    return "\n".join(out) + "\n"
