"""Seeded random instance generators for tests and reports.

Solvers themselves are deterministic; randomness only ever enters through
these generators and the caller's ``random.Random``.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core import Graph, HalfEdge, TurningCostTable, is_eulerian
from .gadget import CnfFormula
from .planar import PlaneGraph


def random_eulerian_multigraph(
    rng: random.Random, max_edges: int = 7, max_vertices: int = 5
) -> Graph:
    """Connected even-degree multigraph built as a union of random closed walks.

    Loops and parallel edges occur naturally (closed walks of length 1 and 2).
    """
    while True:
        n = rng.randint(1, max_vertices)
        pool = [f"v{i}" for i in range(n)]
        target = rng.randint(1, max_edges)
        edges: list[tuple[str, str, str]] = []
        k = 0
        while len(edges) < target:
            length = rng.randint(1, min(3, target - len(edges)))
            walk = [pool[rng.randrange(n)] for _ in range(length)]
            for t in range(length):
                edges.append((f"e{k}", walk[t], walk[(t + 1) % length]))
                k += 1
        used = sorted({v for _, a, b in edges for v in (a, b)})
        g = Graph(used, edges)
        if is_eulerian(g):
            return g


def random_cost_table(
    rng: random.Random,
    g: Graph,
    numerators: tuple[int, int] = (0, 9),
    denominators: tuple[int, int] = (1, 4),
) -> TurningCostTable:
    """A random finite cost for every pairing at every vertex."""
    records = []
    for v in g.vertices:
        for a, b in itertools.combinations(g.half_edges_at(v), 2):
            value = Fraction(rng.randint(*numerators), rng.randint(*denominators))
            records.append((v, a, b, value))
    return TurningCostTable(records)


def random_plane_multigraph(rng: random.Random, n_edges: int) -> PlaneGraph:
    """Connected plane multigraph grown edge by edge inside traced faces."""
    vertices = ["v0"]
    rotation: dict[str, list[HalfEdge]] = {"v0": []}
    edges: list[tuple[str, str, str]] = []

    def insert_after(v: str, anchor: HalfEdge, halves: list[HalfEdge]) -> None:
        pos = rotation[v].index(anchor)
        rotation[v][pos + 1 : pos + 1] = halves

    for t in range(n_edges):
        eid = f"h{t}"
        if not edges:
            if rng.random() < 0.5:
                edges.append((eid, "v0", "v0"))
                rotation["v0"] = [(eid, 0), (eid, 1)]
            else:
                vertices.append("v1")
                edges.append((eid, "v0", "v1"))
                rotation["v0"] = [(eid, 0)]
                rotation["v1"] = [(eid, 1)]
            continue
        p = PlaneGraph(Graph(vertices, edges), {v: tuple(r) for v, r in rotation.items()})
        face = p.faces[rng.randrange(len(p.faces))]
        corners = [p.graph.other_end(d) for d in face]
        if rng.random() < 0.35:
            anchor = corners[rng.randrange(len(corners))]
            v = p.graph.vertex_of(anchor)
            w = f"v{len(vertices)}"
            vertices.append(w)
            edges.append((eid, v, w))
            insert_after(v, anchor, [(eid, 0)])
            rotation[w] = [(eid, 1)]
        else:
            a1 = corners[rng.randrange(len(corners))]
            a2 = corners[rng.randrange(len(corners))]
            va, vb = p.graph.vertex_of(a1), p.graph.vertex_of(a2)
            edges.append((eid, va, vb))
            if a1 == a2:
                insert_after(va, a1, [(eid, 0), (eid, 1)])
            else:
                insert_after(va, a1, [(eid, 0)])
                insert_after(vb, a2, [(eid, 1)])
    return PlaneGraph(Graph(vertices, edges), {v: tuple(r) for v, r in rotation.items()})


def medial_plane_graph(host: PlaneGraph) -> PlaneGraph:
    """Medial graph of a plane multigraph: one degree-4 vertex per host edge.

    Medial edges correspond to host corners (pairs of rotation-consecutive
    half-edges); the rotation around each medial vertex interleaves the two
    corners at either endpoint of its host edge.
    """
    g = host.graph
    if g.m == 0:
        raise ValueError("medial graph needs at least one host edge")

    def corner_id(d: HalfEdge) -> str:
        return f"c.{d[0]}.{d[1]}"

    medial_edges = []
    for eid, _, _ in g.edges:
        for end in (0, 1):
            d = (eid, end)
            medial_edges.append((corner_id(d), d[0], host.rot_next(d)[0]))
    rotation: dict[str, tuple[HalfEdge, ...]] = {}
    for eid, _, _ in g.edges:
        h, h2 = (eid, 0), (eid, 1)
        rotation[eid] = (
            (corner_id(host.rot_prev(h)), 1),
            (corner_id(h2), 0),
            (corner_id(host.rot_prev(h2)), 1),
            (corner_id(h), 0),
        )
    return PlaneGraph(Graph([e for e, _, _ in g.edges], medial_edges), rotation)


def random_four_regular_plane(
    rng: random.Random, max_host_edges: int = 8, min_host_edges: int = 1
) -> PlaneGraph:
    """Random 4-regular plane graph, as the medial of a random plane host."""
    host = random_plane_multigraph(rng, rng.randint(min_host_edges, max_host_edges))
    return medial_plane_graph(host)


def random_cnf_sized(rng: random.Random, num_vars: int, num_clauses: int) -> CnfFormula:
    clauses = []
    for _ in range(num_clauses):
        chosen = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple((v, rng.random() < 0.5) for v in sorted(chosen)))
    return CnfFormula(num_vars, tuple(clauses))


def random_cnf(
    rng: random.Random, max_vars: int = 4, max_clauses: int = 3, min_vars: int = 3
) -> CnfFormula:
    n = rng.randint(min_vars, max_vars)
    r = rng.randint(1, max_clauses)
    return random_cnf_sized(rng, n, r)


def all_sign_patterns_formula() -> CnfFormula:
    """The 8-clause formula over three variables with every sign pattern.

    Unsatisfiable: each assignment falsifies exactly one clause.
    """
    clauses = []
    for signs in itertools.product((True, False), repeat=3):
        clauses.append(tuple((v, s) for v, s in zip((1, 2, 3), signs)))
    return CnfFormula(3, tuple(clauses))
