"""Shared builders and independent brute-force oracles for the test suite."""
from __future__ import annotations

import itertools
from fractions import Fraction

from turncost import (
    Graph,
    PlaneGraph,
    TurningCostTable,
    circuit_cost,
    smoothing_to_circuit,
)


def graph_from(edge_specs, extra_vertices=()):
    vertices = set(extra_vertices)
    for _, u, v in edge_specs:
        vertices.update((u, v))
    return Graph(sorted(vertices), edge_specs)


def half_at(g: Graph, eid: str, v: str, which: int = 0):
    """The half-edge of ``eid`` attached at ``v`` (``which`` picks for loops)."""
    ends = [(eid, i) for i in (0, 1) if g.endpoints(eid)[i] == v]
    return ends[which]


def digon():
    g = graph_from([("e1", "u", "v"), ("e2", "u", "v")])
    w = TurningCostTable(
        [
            ("u", ("e1", 0), ("e2", 0), Fraction(1, 2)),
            ("v", ("e1", 1), ("e2", 1), Fraction(1, 3)),
        ]
    )
    return g, w


def triangle(unit_cost=Fraction(1)):
    g = graph_from([("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")])
    records = []
    for v in g.vertices:
        a, b = g.half_edges_at(v)
        records.append((v, a, b, unit_cost))
    return g, TurningCostTable(records)


def bowtie():
    """Two triangles sharing the center a; splitting transitions cost 0, mixed 1."""
    g = graph_from(
        [
            ("ab", "a", "b"),
            ("ac", "a", "c"),
            ("bc", "b", "c"),
            ("ad", "a", "d"),
            ("ae", "a", "e"),
            ("de", "d", "e"),
        ]
    )
    at_a = [half_at(g, e, "a") for e in ("ab", "ac", "ad", "ae")]
    zero = {frozenset((at_a[0], at_a[1])), frozenset((at_a[2], at_a[3]))}
    records = []
    for x, y in itertools.combinations(at_a, 2):
        value = Fraction(0) if frozenset((x, y)) in zero else Fraction(1)
        records.append(("a", x, y, value))
    return g, TurningCostTable(records)


def figure_eight(white=Fraction(3), black=Fraction(7)):
    """One vertex with two side-by-side loops; smoothing costs split evenly."""
    g = graph_from([("e", "v", "v"), ("f", "v", "v")])
    p = PlaneGraph(g, {"v": (("e", 0), ("e", 1), ("f", 0), ("f", 1))})
    w = TurningCostTable(
        [
            ("v", ("e", 1), ("f", 0), white - 1),
            ("v", ("f", 1), ("e", 0), Fraction(1)),
            ("v", ("e", 0), ("e", 1), black - 2),
            ("v", ("f", 0), ("f", 1), Fraction(2)),
        ]
    )
    return p, w


def four_dipole():
    """Two vertices joined by four nested parallel edges; spec example costs."""
    g = graph_from([(e, "u", "v") for e in "abcd"])
    rot = {
        "u": tuple((e, 0) for e in "abcd"),
        "v": tuple((e, 1) for e in "dcba"),
    }
    p = PlaneGraph(g, rot)
    w = TurningCostTable(
        [
            ("u", ("b", 0), ("c", 0), Fraction(1)),  # a_u = 1
            ("u", ("a", 0), ("b", 0), Fraction(1)),  # b_u = 3
            ("u", ("c", 0), ("d", 0), Fraction(2)),
            ("v", ("c", 1), ("b", 1), Fraction(5)),  # a_v = 5
            ("v", ("d", 1), ("c", 1), Fraction(2)),  # b_v = 4
            ("v", ("b", 1), ("a", 1), Fraction(2)),
        ]
    )
    return p, w


def brute_force_atrail_min(p: PlaneGraph, w: TurningCostTable):
    """Exhaustive minimum over all non-crossing smoothing assignments.

    Independent of the spanning-tree path: costs come straight from
    circuit_cost on the traced trail.
    """
    best = None
    vertices = p.graph.vertices
    for choice in itertools.product(("white", "black"), repeat=len(vertices)):
        smoothing = dict(zip(vertices, choice))
        trails = smoothing_to_circuit(p, smoothing)
        if len(trails) != 1:
            continue
        cost = circuit_cost(p.graph, w, trails[0])
        if best is None or cost < best:
            best = cost
    return best


def brute_force_hamiltonian_min(t):
    """Minimum Hamiltonian cycle weight by permutation enumeration."""
    nodes = list(t.nodes)
    first, rest = nodes[0], nodes[1:]
    best = None
    for perm in itertools.permutations(rest):
        cycle = [first, *perm]
        total = Fraction(0)
        ok = True
        for i in range(len(cycle)):
            weight = t.weight(cycle[i], cycle[(i + 1) % len(cycle)])
            if weight is None:
                ok = False
                break
            total += weight
        if ok and (best is None or total < best):
            best = total
    return best
