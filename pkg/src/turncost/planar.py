"""Optimal non-crossing circuits on 4-regular plane graphs in polynomial time.

A plane embedding is carried as a rotation system: a cyclic order of the
half-edges at each vertex, plus a declared outer face.  Faces are traced
combinatorially, 2-colored with the outer face white, and the Tait graph on
the black faces reduces the optimization to a minimum spanning tree: picking
edge ``e_v`` into the tree smooths vertex ``v`` the white way, leaving it out
smooths it the black way, and spanning trees correspond exactly to the
assignments whose smoothed diagram is a single closed trail.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Circuit,
    Graph,
    HalfEdge,
    NotConnectedError,
    TurningCostTable,
    canonical_circuit,
    circuit_cost,
    validate_circuit,
)
from .solvers import SolveResult

WHITE = "white"
BLACK = "black"


class InvalidRotationError(ValueError):
    pass


class NotFaceTwoColorableError(ValueError):
    pass


class NotFourRegularError(ValueError):
    pass


class PlaneGraph:
    """A graph together with a rotation system and a designated outer face.

    The rotation at each vertex lists its incident half-edges in cyclic
    order.  Face tracing must satisfy Euler's formula V - E + F = 2, i.e. the
    rotation system must describe a genuine plane embedding.
    """

    def __init__(
        self,
        graph: Graph,
        rotation: dict[str, tuple[HalfEdge, ...]],
        outer_index: int = 0,
    ):
        self.graph = graph
        self.rotation = {v: tuple(hs) for v, hs in rotation.items()}
        self.outer_index = outer_index
        if set(self.rotation) != set(graph.vertices):
            raise InvalidRotationError("rotation must cover exactly the vertex set")
        self._next: dict[HalfEdge, HalfEdge] = {}
        self._prev: dict[HalfEdge, HalfEdge] = {}
        for v, hs in self.rotation.items():
            if sorted(hs) != sorted(graph.half_edges_at(v)):
                raise InvalidRotationError(
                    f"rotation at {v!r} does not list its incident half-edges once each"
                )
            for i, h in enumerate(hs):
                self._next[h] = hs[(i + 1) % len(hs)]
                self._prev[h] = hs[(i - 1) % len(hs)]
        self.faces = self._trace()
        if graph.m and graph.n - graph.m + len(self.faces) != 2:
            raise InvalidRotationError(
                "rotation system fails Euler's formula; not a plane embedding"
            )
        if not 0 <= outer_index < max(len(self.faces), 1):
            raise InvalidRotationError(f"no face with index {outer_index}")
        self._face_of: dict[HalfEdge, int] = {}
        for i, face in enumerate(self.faces):
            for dart in face:
                self._face_of[dart] = i

    def rot_next(self, h: HalfEdge) -> HalfEdge:
        return self._next[h]

    def rot_prev(self, h: HalfEdge) -> HalfEdge:
        return self._prev[h]

    def _trace(self) -> tuple[tuple[HalfEdge, ...], ...]:
        g = self.graph
        darts = sorted(self._next)
        remaining = set(darts)
        faces: list[tuple[HalfEdge, ...]] = []
        for d in darts:
            if d not in remaining:
                continue
            orbit = []
            cur = d
            while True:
                orbit.append(cur)
                remaining.discard(cur)
                cur = self._next[g.other_end(cur)]
                if cur == d:
                    break
            faces.append(tuple(orbit))
        return tuple(faces)

    def face_of_dart(self, h: HalfEdge) -> int:
        return self._face_of[h]

    def corner_face(self, h: HalfEdge) -> int:
        """Face filling the wedge between ``h`` and its rotation successor."""
        return self._face_of[self._next[h]]


def trace_faces(p: PlaneGraph) -> tuple[tuple[HalfEdge, ...], ...]:
    """Faces as cyclic dart sequences; traced once at construction."""
    return p.faces


@dataclass(frozen=True)
class FaceColoring:
    colors: tuple[str, ...]

    def color(self, face_index: int) -> str:
        return self.colors[face_index]

    def black_faces(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.colors) if c == BLACK)


def face_two_color(p: PlaneGraph) -> FaceColoring:
    """Proper 2-coloring of the faces with the outer face white.

    Exists exactly when every vertex has even degree; unique given the
    outer-white normalization on a connected plane graph.
    """
    g = p.graph
    odd = [v for v in g.vertices if g.degree(v) % 2]
    if odd:
        raise NotFaceTwoColorableError(f"odd-degree vertex {odd[0]!r} prevents 2-coloring")
    if not g.is_connected():
        raise NotConnectedError("face coloring requires a connected graph")
    colors: dict[int, str] = {p.outer_index: WHITE}
    queue = [p.outer_index]
    while queue:
        f = queue.pop()
        mine = colors[f]
        other_color = BLACK if mine == WHITE else WHITE
        for dart in p.faces[f]:
            neighbour = p.face_of_dart(g.other_end(dart))
            if neighbour not in colors:
                colors[neighbour] = other_color
                queue.append(neighbour)
            elif colors[neighbour] == mine:
                raise NotFaceTwoColorableError("adjacent faces forced to share a color")
    return FaceColoring(tuple(colors[i] for i in range(len(p.faces))))


@dataclass
class TaitGraph:
    """Graph on the black faces with one edge per plane vertex.

    Edge ``e_v`` (kept under the vertex's own id) joins the two black faces
    meeting at ``v`` and weighs ``a_v - b_v``: white-smoothing cost minus
    black-smoothing cost.
    """

    graph: Graph
    weight: dict[str, Fraction]
    white_cost: dict[str, Fraction]
    black_cost: dict[str, Fraction]
    white_pairs: dict[str, tuple[frozenset, ...]]
    black_pairs: dict[str, tuple[frozenset, ...]]


def _require_four_regular(p: PlaneGraph) -> None:
    bad = [v for v in p.graph.vertices if p.graph.degree(v) != 4]
    if bad:
        raise NotFourRegularError(f"vertex {bad[0]!r} has degree {p.graph.degree(bad[0])}")


def _smoothings_at(p: PlaneGraph, coloring: FaceColoring, v: str):
    """White and black smoothings at a degree-4 vertex, from corner colors."""
    rot = p.rotation[v]
    corner_colors = [coloring.color(p.corner_face(h)) for h in rot]
    if corner_colors[0] == corner_colors[1] or corner_colors[0] != corner_colors[2]:
        raise InvalidRotationError(f"corner colors fail to alternate at {v!r}")
    pairs = [frozenset((rot[i], rot[(i + 1) % 4])) for i in range(4)]
    white = tuple(pairs[i] for i in range(4) if corner_colors[i] == WHITE)
    black = tuple(pairs[i] for i in range(4) if corner_colors[i] == BLACK)
    white_faces = tuple(p.corner_face(rot[i]) for i in range(4) if corner_colors[i] == WHITE)
    black_faces = tuple(p.corner_face(rot[i]) for i in range(4) if corner_colors[i] == BLACK)
    return white, black, white_faces, black_faces


def tait_graph(p: PlaneGraph, w: TurningCostTable, coloring: FaceColoring) -> TaitGraph:
    _require_four_regular(p)
    vertices = [f"f{i}" for i in coloring.black_faces()]
    edges: list[tuple[str, str, str]] = []
    weight: dict[str, Fraction] = {}
    white_cost: dict[str, Fraction] = {}
    black_cost: dict[str, Fraction] = {}
    white_pairs: dict[str, tuple[frozenset, ...]] = {}
    black_pairs: dict[str, tuple[frozenset, ...]] = {}
    for v in p.graph.vertices:
        white, black, _, black_faces = _smoothings_at(p, coloring, v)
        a = sum((w.cost(v, *tuple(pair)) for pair in white), Fraction(0))
        b = sum((w.cost(v, *tuple(pair)) for pair in black), Fraction(0))
        f1, f2 = black_faces
        edges.append((v, f"f{f1}", f"f{f2}"))
        weight[v] = a - b
        white_cost[v], black_cost[v] = a, b
        white_pairs[v], black_pairs[v] = white, black
    return TaitGraph(Graph(vertices, edges), weight, white_cost, black_cost, white_pairs, black_pairs)


def _kruskal(t: TaitGraph) -> set[str]:
    """Minimum spanning tree edge ids; negative weights need no special care."""
    parent = {v: v for v in t.graph.vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: set[str] = set()
    for eid, u, v in sorted(t.graph.edges, key=lambda e: (t.weight[e[0]], e[0])):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.add(eid)
    if len(tree) != t.graph.n - 1:
        raise NotConnectedError("Tait graph is disconnected; no spanning tree")
    return tree


def smoothing_to_circuit(p: PlaneGraph, smoothing: dict[str, str]) -> list[Circuit]:
    """Closed trails left after applying the chosen smoothing at every vertex.

    Exactly one trail appears iff the white-smoothed vertex set corresponds to
    a spanning tree of the Tait graph.
    """
    _require_four_regular(p)
    coloring = face_two_color(p)
    g = p.graph
    partner: dict[HalfEdge, HalfEdge] = {}
    for v in g.vertices:
        choice = smoothing[v]
        if choice not in (WHITE, BLACK):
            raise ValueError(f"smoothing at {v!r} must be white or black")
        white, black, _, _ = _smoothings_at(p, coloring, v)
        for pair in white if choice == WHITE else black:
            a, b = tuple(pair)
            partner[a] = b
            partner[b] = a
    remaining = set(g.edge_ids)
    trails: list[Circuit] = []
    while remaining:
        eid = min(remaining)
        start: HalfEdge = (eid, 0)
        entries = [start]
        remaining.discard(eid)
        cur = start
        while True:
            cur = partner[g.other_end(cur)]
            if cur == start:
                break
            entries.append(cur)
            remaining.discard(cur[0])
        trails.append(tuple(entries))
    return sorted(trails, key=lambda t: t[0])


def min_cost_atrail(p: PlaneGraph, w: TurningCostTable) -> SolveResult:
    """Optimal non-crossing Eulerian circuit of a 4-regular plane graph.

    Crossing transitions are treated as prohibited regardless of any table
    entries.  The reported cost is the tree weight plus the sum of all black
    smoothing costs, and always equals the cost of the emitted circuit.
    """
    _require_four_regular(p)
    if not p.graph.is_connected():
        raise NotConnectedError("A-trail search requires a connected graph")
    coloring = face_two_color(p)
    tait = tait_graph(p, w, coloring)
    tree = _kruskal(tait)
    smoothing = {v: (WHITE if v in tree else BLACK) for v in p.graph.vertices}
    trails = smoothing_to_circuit(p, smoothing)
    if len(trails) != 1:
        raise AssertionError("a spanning tree smoothing must leave a single trail")
    circuit = canonical_circuit(p.graph, trails[0])
    validate_circuit(p.graph, circuit)
    cost = sum((tait.weight[v] for v in tree), Fraction(0)) + sum(
        (tait.black_cost[v] for v in p.graph.vertices), Fraction(0)
    )
    if circuit_cost(p.graph, w, circuit) != cost:
        raise AssertionError("tree-weight cost identity violated")
    return SolveResult(cost, circuit, "atrail")


def is_non_crossing(p: PlaneGraph, c: Circuit) -> bool:
    """True when every transition of the circuit pairs rotation-adjacent half-edges."""
    g = p.graph
    validate_circuit(g, c)
    m = len(c)
    for i in range(m):
        exit_h = g.other_end(c[i])
        entry_h = c[(i + 1) % m]
        if entry_h not in (p.rot_next(exit_h), p.rot_prev(exit_h)):
            return False
    return True


def crossings_forbidden(p: PlaneGraph, w: TurningCostTable) -> bool:
    """Do the table's FORBIDDEN marks prohibit both crossing pairs everywhere?"""
    try:
        _require_four_regular(p)
    except NotFourRegularError:
        return False
    for v in p.graph.vertices:
        rot = p.rotation[v]
        for a, b in ((rot[0], rot[2]), (rot[1], rot[3])):
            if not w.is_forbidden(v, a, b):
                return False
    return True
