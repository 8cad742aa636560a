"""Degree reduction: replace high-degree gadget vertices, keeping degree <= 8.

A variable vertex of degree 4k+2 > 8 becomes a (2k+1)-cycle with tripled
cycle edges and two pendant edges per cycle vertex, labelled alternately
around the outside so that zero-cost passages enter at one label and leave at
a cyclically adjacent one.  The apex becomes the Cartesian product of a
2d-cycle and a d-vertex path with pendants on one boundary cycle and doubled
non-adjacent edges on the other; all its internal pairings cost zero, so any
pairing of the pendants can be routed through edge-disjoint paths.
Zero-cost feasibility of the gadget is preserved in both directions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import Graph, HalfEdge, TurningCostTable
from .gadget import GadgetGraph


class BadDegreeError(ValueError):
    pass


class DegreeDivisibleBy4Error(ValueError):
    pass


class NotPerfectPairingError(ValueError):
    pass


def _variable_blowup_parts(degree: int, pendant_halves: list[HalfEdge], prefix: str):
    """Cycle vertices, tripled arcs, rotations and costs for one variable blow-up.

    ``pendant_halves[t]`` is the half-edge that will sit at label t+1's slot.
    Label 1 takes the outside pendant of cycle vertex 0; walking round the
    outer face, each next label sits at the next cycle vertex on the opposite
    side, which works out because the cycle length 2k+1 is odd.
    """
    k = (degree - 2) // 4
    cyc = 2 * k + 1
    cycle_vertices = [f"{prefix}.c{j}" for j in range(cyc)]
    arc_edges: list[tuple[str, str, str]] = []
    for j in range(cyc):
        for t in range(3):
            arc_edges.append((f"{prefix}.r{j}.{t}", cycle_vertices[j], cycle_vertices[(j + 1) % cyc]))
    slot_at: dict[tuple[int, str], HalfEdge] = {}
    for t, half in enumerate(pendant_halves):
        j = t % cyc
        side = "out" if t % 2 == 0 else "in"
        slot_at[(j, side)] = half
    rotation: dict[str, tuple[HalfEdge, ...]] = {}
    for j in range(cyc):
        nxt = [(f"{prefix}.r{j}.{t}", 0) for t in range(3)]
        prev = [(f"{prefix}.r{(j - 1) % cyc}.{t}", 1) for t in (2, 1, 0)]
        rotation[cycle_vertices[j]] = (
            slot_at[(j, "out")],
            *nxt,
            slot_at[(j, "in")],
            *prev,
        )
    records = []
    for v, rot in rotation.items():
        d = len(rot)
        consecutive = {frozenset((rot[t], rot[(t + 1) % d])) for t in range(d)}
        for a, b in itertools.combinations(rot, 2):
            if frozenset((a, b)) not in consecutive:
                records.append((v, a, b, Fraction(1)))
    slot_vertex = {t: cycle_vertices[t % cyc] for t in range(degree)}
    return cycle_vertices, arc_edges, rotation, records, slot_vertex


def _check_variable_degree(degree: int) -> None:
    if degree % 2 or degree % 4 == 0:
        raise BadDegreeError(f"degree {degree} is not 2 modulo 4; normalize first")
    if degree <= 8:
        raise BadDegreeError(f"degree {degree} needs no blow-up")


@dataclass
class VariableBlowup:
    graph: Graph
    rotation: dict[str, tuple[HalfEdge, ...]]
    table: TurningCostTable
    pendant_edges: tuple[str, ...]  # in label order
    cycle_vertices: tuple[str, ...]
    k: int


def build_variable_blowup(degree: int, prefix: str = "b") -> VariableBlowup:
    """Standalone variable blow-up with stub vertices on its pendant edges."""
    _check_variable_degree(degree)
    pendant_edges = [f"{prefix}.e{t + 1}" for t in range(degree)]
    pendant_halves: list[HalfEdge] = [(e, 0) for e in pendant_edges]
    cycle_vertices, arc_edges, rotation, records, slot_vertex = _variable_blowup_parts(
        degree, pendant_halves, prefix
    )
    stubs = [f"{prefix}.v{t + 1}" for t in range(degree)]
    edges = arc_edges + [
        (pendant_edges[t], slot_vertex[t], stubs[t]) for t in range(degree)
    ]
    graph = Graph(cycle_vertices + stubs, edges)
    for t in range(degree):
        rotation[stubs[t]] = ((pendant_edges[t], 1),)
    return VariableBlowup(
        graph=graph,
        rotation=rotation,
        table=TurningCostTable(records),
        pendant_edges=tuple(pendant_edges),
        cycle_vertices=tuple(cycle_vertices),
        k=(degree - 2) // 4,
    )


def _apex_blowup_parts(degree: int, prefix: str):
    """Grid vertices and internal edges of the apex blow-up (all pairings free)."""
    d = degree // 2
    cols = 2 * d

    def grid(i: int, j: int) -> str:
        return f"{prefix}.g{i}.{j}"

    vertices = [grid(i, j) for i in range(cols) for j in range(d)]
    edges: list[tuple[str, str, str]] = []
    for j in range(d):
        for i in range(cols):
            edges.append((f"{prefix}.c{j}.{i}", grid(i, j), grid((i + 1) % cols, j)))
    for i in range(cols):
        for j in range(d - 1):
            edges.append((f"{prefix}.p{i}.{j}", grid(i, j), grid(i, j + 1)))
    for t in range(d):
        edges.append((f"{prefix}.d{t}", grid(2 * t, d - 1), grid(2 * t + 1, d - 1)))
    return d, cols, vertices, edges, grid


@dataclass
class ApexBlowup:
    graph: Graph
    pendant_edges: tuple[str, ...]
    d: int
    prefix: str

    def grid(self, i: int, j: int) -> str:
        return f"{self.prefix}.g{i}.{j}"


def build_apex_blowup(degree: int, prefix: str = "bu") -> ApexBlowup:
    """Standalone apex blow-up; accepts any even degree with d >= 2 for testing."""
    if degree % 2 or degree // 2 < 2:
        raise BadDegreeError(f"degree {degree} does not split into d >= 2 pendant pairs")
    d, cols, vertices, edges, grid = _apex_blowup_parts(degree, prefix)
    pendant_edges = [f"{prefix}.f{i + 1}" for i in range(cols)]
    stubs = [f"{prefix}.w{i + 1}" for i in range(cols)]
    edges = edges + [(pendant_edges[i], grid(i, 0), stubs[i]) for i in range(cols)]
    return ApexBlowup(
        graph=Graph(vertices + stubs, edges),
        pendant_edges=tuple(pendant_edges),
        d=d,
        prefix=prefix,
    )


def route_apex_paths(b: ApexBlowup, pairing) -> list[list[str]]:
    """Edge-disjoint paths through the apex blow-up, one per pendant pair.

    Each pair gets its own copy of the boundary cycle: descend the first
    pendant's column to that row, walk the row to the partner's column, and
    climb back out.  Paths are returned as edge-id lists.
    """
    pairs = sorted(tuple(sorted(pair)) for pair in pairing)
    flat = [i for pair in pairs for i in pair]
    if sorted(flat) != list(range(1, 2 * b.d + 1)):
        raise NotPerfectPairingError("pairing must partition the pendant labels")
    cols = 2 * b.d
    paths: list[list[str]] = []
    for row, (i, j) in enumerate(pairs):
        ci, cj = i - 1, j - 1
        path = [b.pendant_edges[ci]]
        path += [f"{b.prefix}.p{ci}.{t}" for t in range(row)]
        col = ci
        while col != cj:
            path.append(f"{b.prefix}.c{row}.{col}")
            col = (col + 1) % cols
        path += [f"{b.prefix}.p{cj}.{t}" for t in range(row - 1, -1, -1)]
        path.append(b.pendant_edges[cj])
        paths.append(path)
    return paths


@dataclass
class BlownGadget:
    """Gadget with every high-degree vertex replaced; maximum degree 8."""

    graph: Graph
    table: TurningCostTable
    pendant_order: dict[str, tuple[HalfEdge, ...]]  # blown vertex -> labels 1..d
    internal_edges: dict[str, frozenset]
    blown_variables: tuple[str, ...]
    apex_blown: bool


def blow_up(g: GadgetGraph) -> BlownGadget:
    """Replace every vertex of degree over 8; zero-cost feasibility is kept.

    Pendant edges keep their original edge ids and far end indices, so
    circuits of the result map back to gadget edges by label and every cost
    entry at a surviving vertex stays valid.
    """
    graph = g.graph
    for i in sorted(g.var_vertex):
        x = g.var_vertex[i]
        if graph.degree(x) % 4 == 0:
            raise DegreeDivisibleBy4Error(
                f"{x!r} has degree {graph.degree(x)}; run normalize_mod4 first"
            )
    endpoints = {eid: [u, v] for eid, u, v in graph.edges}
    edge_order = [eid for eid, _, _ in graph.edges]
    vertices = set(graph.vertices)
    extra_records: list = []
    pendant_order: dict[str, tuple[HalfEdge, ...]] = {}
    internal_edges: dict[str, frozenset] = {}
    blown: list[str] = []

    def retarget(half: HalfEdge, new_vertex: str) -> None:
        endpoints[half[0]][half[1]] = new_vertex

    for i in sorted(g.var_vertex):
        x = g.var_vertex[i]
        degree = graph.degree(x)
        if degree <= 8:
            continue
        blown.append(x)
        halves = list(g.rotation[x])
        cycle_vertices, arc_edges, _, records, slot_vertex = _variable_blowup_parts(
            degree, halves, x
        )
        for t, half in enumerate(halves):
            retarget(half, slot_vertex[t])
        vertices.discard(x)
        vertices.update(cycle_vertices)
        for eid, u, v in arc_edges:
            endpoints[eid] = [u, v]
            edge_order.append(eid)
        extra_records += records
        pendant_order[x] = tuple(halves)
        internal_edges[x] = frozenset(eid for eid, _, _ in arc_edges)

    apex_blown = False
    u = g.apex
    if graph.degree(u) > 8:
        apex_blown = True
        degree = graph.degree(u)
        d, cols, grid_vertices, grid_edges, grid = _apex_blowup_parts(degree, u)
        halves = list(g.rotation[u])
        for t, half in enumerate(halves):
            retarget(half, grid(t, 0))
        vertices.discard(u)
        vertices.update(grid_vertices)
        for eid, a, b in grid_edges:
            endpoints[eid] = [a, b]
            edge_order.append(eid)
        pendant_order[u] = tuple(halves)
        internal_edges[u] = frozenset(eid for eid, _, _ in grid_edges)

    removed = set(blown) | ({u} if apex_blown else set())
    records = [
        (v, a, b, value) for v, a, b, value in g.table.records() if v not in removed
    ]
    new_graph = Graph(
        sorted(vertices),
        [(eid, endpoints[eid][0], endpoints[eid][1]) for eid in edge_order],
    )
    return BlownGadget(
        graph=new_graph,
        table=TurningCostTable(records + extra_records),
        pendant_order=pendant_order,
        internal_edges=internal_edges,
        blown_variables=tuple(blown),
        apex_blown=apex_blown,
    )
