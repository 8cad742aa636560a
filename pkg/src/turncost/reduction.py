"""Reduction of turning-cost circuits to the traveling salesman problem.

Every edge is subdivided twice, turning costs move onto adjacencies of the
subdivided graph, and the weighted line graph of the result hosts a
cost-preserving bijection between its Hamiltonian cycles and the Eulerian
circuits of the original graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Circuit,
    FORBIDDEN,
    Graph,
    HalfEdge,
    InvalidGraphError,
    TurningCostTable,
)


class MalformedCycleError(ValueError):
    """The given cycle cannot be read back as an Eulerian circuit."""


@dataclass
class SubdividedGraph:
    """A graph with every original edge replaced by a three-edge path.

    ``triples`` maps each original edge id to its replacement edge ids in
    traversal order from end 0 to end 1.  ``outer_for_half`` maps each
    original half-edge to the replacement half-edge that still attaches at the
    original vertex.
    """

    graph: Graph
    table: TurningCostTable
    triples: dict[str, tuple[str, str, str]]
    origin: dict[str, tuple[str, str]]  # replacement edge id -> (original id, role)
    outer_for_half: dict[HalfEdge, HalfEdge]

    def original_half(self, outer_edge: str) -> HalfEdge:
        eid, role = self.origin[outer_edge]
        end = 0 if role in ("u", "u1") else 1
        return (eid, end)

    def center_ids(self) -> set[str]:
        return {c for _, c, _ in self.triples.values()}


@dataclass
class WeightedGraph:
    """Simple graph with exact rational edge weights; absent edges cannot be used."""

    nodes: tuple[str, ...]
    weights: dict[frozenset, Fraction]

    def __post_init__(self):
        self.nodes = tuple(sorted(self.nodes))
        nodeset = set(self.nodes)
        adjacency: dict[str, list[str]] = {v: [] for v in self.nodes}
        for pair, value in self.weights.items():
            if len(pair) != 2 or not pair <= nodeset:
                raise InvalidGraphError(f"bad weighted edge {set(pair)!r}")
            a, b = sorted(pair)
            adjacency[a].append(b)
            adjacency[b].append(a)
        self._adjacency = {v: tuple(sorted(ws)) for v, ws in adjacency.items()}

    def weight(self, a: str, b: str) -> Fraction | None:
        return self.weights.get(frozenset((a, b)))

    def neighbors(self, a: str) -> tuple[str, ...]:
        return self._adjacency[a]


@dataclass
class LineGraphInstance:
    """Weighted line graph of a subdivided graph, with lifting metadata."""

    graph: WeightedGraph
    origin: dict[frozenset, tuple[str, frozenset]]  # L-edge -> (vertex, pairing)
    sub: SubdividedGraph


def subdivide_twice(g: Graph, w: TurningCostTable) -> SubdividedGraph:
    """Subdivide every edge twice; costs survive on the outer replacement edges.

    Replacement ids derive from the original edge id: ``e`` becomes
    ``e.u, e.c, e.v`` (``e.u1, e.c, e.u2`` for a loop), and the two new
    vertices are ``e.p`` and ``e.q``.  The result has no loops or multi-edges.
    """
    vertices = list(g.vertices)
    vseen = set(vertices)
    edges: list[tuple[str, str, str]] = []
    triples: dict[str, tuple[str, str, str]] = {}
    origin: dict[str, tuple[str, str]] = {}
    outer_for_half: dict[HalfEdge, HalfEdge] = {}
    for eid, u, v in g.edges:
        p, q = f"{eid}.p", f"{eid}.q"
        if p in vseen or q in vseen:
            raise InvalidGraphError(f"subdivision vertex name for {eid!r} collides")
        vseen.update((p, q))
        vertices += [p, q]
        roles = ("u1", "u2") if u == v else ("u", "v")
        first, center, last = f"{eid}.{roles[0]}", f"{eid}.c", f"{eid}.{roles[1]}"
        edges += [(first, u, p), (center, p, q), (last, q, v)]
        triples[eid] = (first, center, last)
        origin[first] = (eid, roles[0])
        origin[center] = (eid, "c")
        origin[last] = (eid, roles[1])
        outer_for_half[(eid, 0)] = (first, 0)
        outer_for_half[(eid, 1)] = (last, 1)
    graph = Graph(vertices, edges)
    records = []
    for v, a, b, value in w.records():
        records.append((v, outer_for_half[a], outer_for_half[b], value))
    return SubdividedGraph(graph, TurningCostTable(records), triples, origin, outer_for_half)


def line_graph_weighted(s: SubdividedGraph) -> LineGraphInstance:
    """Line graph of the subdivided graph; each adjacency carries its turning cost."""
    g, table = s.graph, s.table
    weights: dict[frozenset, Fraction] = {}
    origin: dict[frozenset, tuple[str, frozenset]] = {}
    for v in g.vertices:
        halves = g.half_edges_at(v)
        for ha, hb in itertools.combinations(halves, 2):
            key = frozenset((ha[0], hb[0]))
            # simple graph: each pair of edges meets at one vertex only
            weights[key] = table.cost(v, ha, hb)
            origin[key] = (v, frozenset((ha, hb)))
    nodes = tuple(e for e, _, _ in g.edges)
    return LineGraphInstance(WeightedGraph(nodes, weights), origin, s)


def lift_hamiltonian(l: LineGraphInstance, h: list[str]) -> Circuit:
    """Read a Hamiltonian cycle of the line graph back as an Eulerian circuit.

    Every center node has degree 2, so a valid cycle decomposes into blocks
    ``outer, center, outer``; the first outer of each block names the
    half-edge by which the original edge is entered.
    """
    sub = l.sub
    nodes = list(h)
    if sorted(nodes) != sorted(l.graph.nodes):
        raise MalformedCycleError("cycle does not visit every line-graph node exactly once")
    centers = sub.center_ids()
    m = len(nodes) // 3
    center_positions = [i for i, x in enumerate(nodes) if x in centers]
    if len(center_positions) != m:
        raise MalformedCycleError("wrong number of center nodes")
    first = center_positions[0]
    nodes = nodes[first - 1 :] + nodes[: first - 1]
    entries: list[HalfEdge] = []
    for t in range(m):
        a, c, b = nodes[3 * t], nodes[3 * t + 1], nodes[3 * t + 2]
        if c not in centers:
            raise MalformedCycleError(f"node {c!r} is not a center where one was expected")
        eid, _ = sub.origin[c]
        outers = set(sub.triples[eid]) - {c}
        if {a, b} != outers:
            raise MalformedCycleError(f"block around {c!r} mixes unrelated edges")
        entries.append(sub.original_half(a))
    return tuple(entries)
