"""Multigraphs with distinguishable half-edges, turning costs, and Eulerian circuits.

Vertices and edges are identified by strings.  A half-edge is a pair
``(edge_id, end)`` with ``end`` in ``{0, 1}``; end 0 attaches to the first
endpoint named when the edge was declared.  Loops contribute two half-edges
distinguished by their end index.  All costs are exact rationals
(:class:`fractions.Fraction`); floating point never enters a cost computation.

Every operation here is a pure function over immutable values: results may be
shared freely between threads.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

HalfEdge = tuple[str, int]
Circuit = tuple[HalfEdge, ...]


class InvalidGraphError(ValueError):
    """The graph description itself is malformed (duplicate ids, bad endpoint)."""


class NotConnectedError(ValueError):
    pass


class NotEulerianError(ValueError):
    pass


class CircuitError(ValueError):
    """Base class for circuit validation failures."""


class UnknownHalfEdgeError(CircuitError):
    pass


class MissingEdgeError(CircuitError):
    pass


class DuplicateEdgeError(CircuitError):
    pass


class BrokenAdjacencyError(CircuitError):
    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class Graph:
    """Finite undirected multigraph with loops and distinguishable edges."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]):
        vs = sorted({str(v) for v in vertices})
        es = tuple((str(e), str(u), str(v)) for e, u, v in edges)
        vset = set(vs)
        endpoints: dict[str, tuple[str, str]] = {}
        for eid, u, v in es:
            if eid in endpoints:
                raise InvalidGraphError(f"duplicate edge id {eid!r}")
            if u not in vset or v not in vset:
                raise InvalidGraphError(f"edge {eid!r} references unknown vertex")
            endpoints[eid] = (u, v)
        self.vertices: tuple[str, ...] = tuple(vs)
        self.edges: tuple[tuple[str, str, str], ...] = es
        self._endpoints = endpoints
        incidence: dict[str, list[HalfEdge]] = {v: [] for v in vs}
        for eid, u, v in es:
            incidence[u].append((eid, 0))
            incidence[v].append((eid, 1))
        self._incidence = {v: tuple(hs) for v, hs in incidence.items()}

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _, _ in self.edges)

    def endpoints(self, eid: str) -> tuple[str, str]:
        return self._endpoints[eid]

    def has_edge(self, eid: str) -> bool:
        return eid in self._endpoints

    def is_loop(self, eid: str) -> bool:
        u, v = self._endpoints[eid]
        return u == v

    def half_edges_at(self, v: str) -> tuple[HalfEdge, ...]:
        return self._incidence[v]

    def degree(self, v: str) -> int:
        return len(self._incidence[v])

    def vertex_of(self, h: HalfEdge) -> str:
        return self._endpoints[h[0]][h[1]]

    def other_end(self, h: HalfEdge) -> HalfEdge:
        return (h[0], 1 - h[1])

    def has_half_edge(self, h: HalfEdge) -> bool:
        return (
            isinstance(h, tuple)
            and len(h) == 2
            and h[0] in self._endpoints
            and h[1] in (0, 1)
        )

    def add_edges(self, extra: Iterable[tuple[str, str, str]]) -> "Graph":
        return Graph(self.vertices, list(self.edges) + list(extra))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adjacency: dict[str, list[str]] = {v: [] for v in self.vertices}
        for _, u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class _Forbidden:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FORBIDDEN"


#: Marker for a prohibited pairing.  Evaluates as big-M in cost computations.
FORBIDDEN = _Forbidden()

CostValue = Fraction  # finite entries; FORBIDDEN is the only non-Fraction value


class TurningCostTable:
    """Costs per unordered pairing of distinct half-edges at a common vertex.

    Unlisted pairings cost 0.  A pairing may instead carry the FORBIDDEN
    marker, which evaluates as big-M: one more than the sum of every finite
    entry in the table, so any circuit through a forbidden pairing costs more
    than any circuit avoiding all of them.
    """

    def __init__(self, entries: Iterable[tuple[str, HalfEdge, HalfEdge, object]] = ()):
        table: dict[tuple[str, frozenset], object] = {}
        for v, a, b, value in entries:
            a = (str(a[0]), int(a[1]))
            b = (str(b[0]), int(b[1]))
            if a == b:
                raise ValueError(f"pairing at {v!r} repeats half-edge {a!r}")
            key = (str(v), frozenset((a, b)))
            if key in table:
                raise ValueError(f"duplicate cost entry for {a!r}, {b!r} at {v!r}")
            if value is not FORBIDDEN:
                value = Fraction(value)
                if value < 0:
                    raise ValueError(f"negative turning cost at {v!r}")
            table[key] = value
        self._table = table
        self._big_m: Fraction | None = None

    @property
    def big_m(self) -> Fraction:
        if self._big_m is None:
            total = Fraction(0)
            for value in self._table.values():
                if value is not FORBIDDEN:
                    total += value
            self._big_m = Fraction(1) + total
        return self._big_m

    def lookup(self, v: str, a: HalfEdge, b: HalfEdge):
        """Raw entry for the pairing, or None when unlisted."""
        return self._table.get((v, frozenset((a, b))))

    def is_forbidden(self, v: str, a: HalfEdge, b: HalfEdge) -> bool:
        return self.lookup(v, a, b) is FORBIDDEN

    def cost(self, v: str, a: HalfEdge, b: HalfEdge) -> Fraction:
        value = self._table.get((v, frozenset((a, b))))
        if value is None:
            return Fraction(0)
        if value is FORBIDDEN:
            return self.big_m
        return value

    def records(self) -> Iterator[tuple[str, HalfEdge, HalfEdge, object]]:
        """Entries in a deterministic order, each pairing with sorted half-edges."""
        for (v, pair), value in sorted(
            self._table.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))
        ):
            a, b = sorted(pair)
            yield v, a, b, value

    def validate_against(self, g: Graph) -> None:
        """Check that every keyed pairing joins half-edges attached at the vertex."""
        for v, a, b, _ in self.records():
            for h in (a, b):
                if not g.has_half_edge(h):
                    raise InvalidGraphError(f"cost entry references unknown half-edge {h!r}")
                if g.vertex_of(h) != v:
                    raise InvalidGraphError(
                        f"cost entry at {v!r} uses half-edge {h!r} attached elsewhere"
                    )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TurningCostTable) and self._table == other._table

    def __repr__(self) -> str:
        return f"TurningCostTable({len(self._table)} entries)"


@dataclass
class TransitionSystem:
    """Perfect matching of the incident half-edges at every vertex."""

    at: dict[str, tuple[frozenset, ...]]

    def matching_at(self, v: str) -> tuple[frozenset, ...]:
        return self.at.get(v, ())

    def validate_against(self, g: Graph) -> None:
        for v in g.vertices:
            halves = set(g.half_edges_at(v))
            covered: set[HalfEdge] = set()
            for pair in self.matching_at(v):
                if len(pair) != 2 or not pair <= halves:
                    raise InvalidGraphError(f"bad pairing {set(pair)!r} at {v!r}")
                if pair & covered:
                    raise InvalidGraphError(f"half-edge matched twice at {v!r}")
                covered |= pair
            if covered != halves:
                raise InvalidGraphError(f"matching at {v!r} is not perfect")


# -- Eulerian structure ----------------------------------------------------


def is_eulerian(g: Graph) -> bool:
    """True iff the graph is connected with every degree even."""
    if g.n == 0:
        raise InvalidGraphError("empty graph")
    if any(g.degree(v) % 2 for v in g.vertices):
        return False
    return g.is_connected()


def pair_ascending(odd: list[str]) -> list[tuple[str, str]]:
    """Default augmentation policy: pair odd vertices in ascending id order."""
    return list(zip(odd[0::2], odd[1::2]))


def augment_to_eulerian(
    g: Graph, policy: Callable[[list[str]], list[tuple[str, str]]] = pair_ascending
) -> Graph:
    """Add edges pairing up odd-degree vertices until none remain.

    New edges get fresh ids and, being absent from any cost table, default-0
    pairings everywhere.
    """
    if not g.is_connected():
        raise NotConnectedError("cannot augment a disconnected graph")
    odd = sorted(v for v in g.vertices if g.degree(v) % 2)
    if not odd:
        return g
    pairs = policy(list(odd))
    used = [v for pair in pairs for v in pair]
    if sorted(used) != odd or any(a == b for a, b in pairs):
        raise ValueError("augmentation policy must pair each odd vertex exactly once")
    existing = set(g.edge_ids)
    extra = []
    k = 0
    for u, v in pairs:
        while f"aug{k}" in existing:
            k += 1
        extra.append((f"aug{k}", u, v))
        existing.add(f"aug{k}")
    return g.add_edges(extra)


# -- circuits ----------------------------------------------------------------


def validate_circuit(g: Graph, c: Circuit) -> None:
    """Raise a CircuitError unless ``c`` is an Eulerian circuit of ``g``."""
    if g.m == 0:
        if c:
            raise UnknownHalfEdgeError("circuit on an edgeless graph must be empty")
        return
    if not c:
        raise MissingEdgeError("empty circuit misses every edge")
    seen: set[str] = set()
    for h in c:
        if not g.has_half_edge(h):
            raise UnknownHalfEdgeError(f"not a half-edge of this graph: {h!r}")
        if h[0] in seen:
            raise DuplicateEdgeError(f"edge {h[0]!r} traversed more than once")
        seen.add(h[0])
    missing = set(g.edge_ids) - seen
    if missing:
        raise MissingEdgeError(f"edge {sorted(missing)[0]!r} never traversed")
    m = len(c)
    for i in range(m):
        exit_v = g.vertex_of(g.other_end(c[i]))
        entry_v = g.vertex_of(c[(i + 1) % m])
        if exit_v != entry_v:
            raise BrokenAdjacencyError(
                f"positions {i} and {(i + 1) % m} do not meet at a common vertex", i
            )


def transitions_of(g: Graph, c: Circuit) -> TransitionSystem:
    """Transition system the circuit induces: consecutive half-edges pair up."""
    validate_circuit(g, c)
    at: dict[str, list[frozenset]] = {v: [] for v in g.vertices}
    m = len(c)
    for i in range(m):
        exit_h = g.other_end(c[i])
        entry_h = c[(i + 1) % m]
        at[g.vertex_of(exit_h)].append(frozenset((exit_h, entry_h)))
    return TransitionSystem({v: tuple(sorted(ps, key=sorted)) for v, ps in at.items()})


def circuit_cost(g: Graph, w: TurningCostTable, c: Circuit) -> Fraction:
    """Sum of the turning costs of every pairing the circuit induces."""
    validate_circuit(g, c)
    total = Fraction(0)
    m = len(c)
    for i in range(m):
        exit_h = g.other_end(c[i])
        entry_h = c[(i + 1) % m]
        total += w.cost(g.vertex_of(exit_h), exit_h, entry_h)
    return total


def reverse_circuit(g: Graph, c: Circuit) -> Circuit:
    return tuple(g.other_end(h) for h in reversed(c))


def circuit_sort_key(c: Circuit) -> tuple:
    return (tuple(h[0] for h in c), tuple(h[1] for h in c))


def canonical_circuit(g: Graph, c: Circuit) -> Circuit:
    """Deterministic representative of the circuit's rotation/reversal class.

    Rotate so the smallest edge id comes first; between the two directions,
    prefer the one with the smaller edge-id sequence, then end indices.
    """
    if not c:
        return c

    def rotated(seq: Circuit) -> Circuit:
        i = min(range(len(seq)), key=lambda k: seq[k][0])
        return seq[i:] + seq[:i]

    return min(
        (rotated(c), rotated(reverse_circuit(g, c))), key=circuit_sort_key
    )


def find_eulerian_circuit(g: Graph) -> Circuit:
    """Some Eulerian circuit, by Hierholzer's splicing walk (deterministic)."""
    if not is_eulerian(g):
        raise NotEulerianError("graph is not Eulerian")
    if g.m == 0:
        return ()
    order = {v: sorted(g.half_edges_at(v)) for v in g.vertices}
    cursor = {v: 0 for v in g.vertices}
    used: set[str] = set()
    start = g.vertex_of(min(order[v][0] for v in g.vertices if order[v]))
    stack: list[tuple[str, HalfEdge | None]] = [(start, None)]
    trail: list[HalfEdge] = []
    while stack:
        v, via = stack[-1]
        halves = order[v]
        i = cursor[v]
        while i < len(halves) and halves[i][0] in used:
            i += 1
        cursor[v] = i
        if i < len(halves):
            h = halves[i]
            used.add(h[0])
            stack.append((g.vertex_of(g.other_end(h)), h))
        else:
            stack.pop()
            if via is not None:
                trail.append(via)
    trail.reverse()
    return tuple(trail)
