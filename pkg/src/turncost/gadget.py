"""Compile 3-SAT instances into Eulerian graphs with 0/1 turning costs.

Each clause becomes a triangle on its three variable vertices; an apex vertex
is joined to every variable vertex through the unshaded regions between
consecutive triangles, one edge where the literal sign switches and two where
it repeats.  Rotation-adjacent pairings cost 0 at variable vertices and every
pairing at the apex costs 0 (left implicit), all other pairings cost 1.  The
formula is satisfiable exactly when the result has a zero-cost Eulerian
circuit, and a satisfying assignment can be read off any such circuit.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Circuit,
    Graph,
    HalfEdge,
    TurningCostTable,
    circuit_cost,
    transitions_of,
)
from .solvers import TooLargeError, zero_cost_circuit

APEX = "u"


class CnfSyntaxError(ValueError):
    pass


class NotThreeSatError(ValueError):
    pass


class NotZeroCostError(ValueError):
    pass


class AmbiguousTransitionError(ValueError):
    pass


Literal = tuple[int, bool]  # (variable index, is positive)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if not self.clauses:
            raise NotThreeSatError("formula has no clauses")
        for clause in self.clauses:
            if len(clause) != 3 or len({v for v, _ in clause}) != 3:
                raise NotThreeSatError(
                    "every clause needs exactly three distinct variables"
                )
            for v, _ in clause:
                if not 1 <= v <= self.num_vars:
                    raise NotThreeSatError(f"variable {v} out of range 1..{self.num_vars}")

    def occurring_variables(self) -> tuple[int, ...]:
        return tuple(sorted({v for clause in self.clauses for v, _ in clause}))

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(
            any(assignment.get(v, False) == sign for v, sign in clause)
            for clause in self.clauses
        )

    def is_satisfiable(self) -> tuple[bool, dict[int, bool] | None]:
        """Truth-table check over the occurring variables (test oracle)."""
        occurring = self.occurring_variables()
        for bits in itertools.product((False, True), repeat=len(occurring)):
            assignment = dict(zip(occurring, bits))
            if self.satisfied_by(assignment):
                return True, assignment
        return False, None


def parse_cnf(text: str) -> CnfFormula:
    """Read a DIMACS CNF file; clauses must have exactly 3 distinct variables."""
    num_vars: int | None = None
    literals: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if num_vars is not None:
                raise CnfSyntaxError(f"line {lineno}: second problem line")
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfSyntaxError(f"line {lineno}: malformed problem line")
            try:
                num_vars = int(parts[2])
                int(parts[3])
            except ValueError:
                raise CnfSyntaxError(f"line {lineno}: non-numeric problem line") from None
            continue
        if num_vars is None:
            raise CnfSyntaxError(f"line {lineno}: clause before problem line")
        for token in stripped.split():
            try:
                literals.append(int(token))
            except ValueError:
                raise CnfSyntaxError(f"line {lineno}: bad literal {token!r}") from None
    if num_vars is None:
        raise CnfSyntaxError("missing problem line")
    clauses: list[tuple[Literal, ...]] = []
    current: list[Literal] = []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(current))
            current = []
            continue
        if abs(lit) > num_vars:
            raise CnfSyntaxError(f"literal {lit} exceeds declared variable count")
        current.append((abs(lit), lit > 0))
    if current:
        raise CnfSyntaxError("last clause is not terminated by 0")
    for clause in clauses:
        if len(clause) != 3 or len({v for v, _ in clause}) != 3:
            raise NotThreeSatError("every clause needs exactly three distinct variables")
    if not clauses:
        raise NotThreeSatError("formula has no clauses")
    return CnfFormula(num_vars, tuple(clauses))


@dataclass
class GadgetGraph:
    """The compiled instance plus the labels needed to read circuits back."""

    graph: Graph
    rotation: dict[str, tuple[HalfEdge, ...]]
    table: TurningCostTable
    formula: CnfFormula
    apex: str
    var_vertex: dict[int, str]
    shaded: dict[str, dict[int, frozenset]]  # vertex -> clause index -> triangle pair
    normalized: bool
    build_ops: int

    def apex_edge_count(self, vertex: str) -> int:
        u = self.apex
        return sum(1 for _, a, b in self.graph.edges if {a, b} == {vertex, u})


def _triangle_edges_of_clause(j: int, variables: tuple[int, int, int]):
    v1, v2, v3 = sorted(variables)
    return {
        frozenset((v1, v2)): f"c{j}.a",
        frozenset((v1, v3)): f"c{j}.b",
        frozenset((v2, v3)): f"c{j}.c",
    }


def build_gadget(f: CnfFormula) -> GadgetGraph:
    """Build the Eulerian graph with turning costs for a 3-SAT formula.

    Clauses are processed left to right; at each variable vertex the shaded
    (same-triangle) pairs appear in clause order, each followed by the apex
    half-edges of the unshaded region that ends it.  Variables absent from
    every clause get no vertex.
    """
    ops = 0
    occurring = f.occurring_variables()
    if len(occurring) < f.num_vars:
        warnings.warn(
            f"{f.num_vars - len(occurring)} declared variable(s) occur in no clause; dropped",
            stacklevel=2,
        )
    var_vertex = {i: f"x{i}" for i in occurring}
    vertices = [APEX] + [var_vertex[i] for i in occurring]
    edges: list[tuple[str, str, str]] = []
    first_endpoint: dict[str, str] = {}
    occs: dict[int, list[tuple[int, bool]]] = {i: [] for i in occurring}
    triangle_at: dict[tuple[int, int], list[str]] = {}
    for j, clause in enumerate(f.clauses, start=1):
        variables = tuple(v for v, _ in clause)
        ids = _triangle_edges_of_clause(j, variables)
        for pair, eid in sorted(ids.items(), key=lambda kv: kv[1]):
            a, b = sorted(pair)
            edges.append((eid, var_vertex[a], var_vertex[b]))
            first_endpoint[eid] = var_vertex[a]
            ops += 1
        for v, sign in clause:
            occs[v].append((j, sign))
            others = sorted(set(variables) - {v})
            mine = sorted(ids[frozenset((v, o))] for o in others)
            triangle_at[(v, j)] = mine
            ops += 1

    rotation: dict[str, list[HalfEdge]] = {APEX: []}
    shaded: dict[str, dict[int, frozenset]] = {}
    apex_rotation: list[HalfEdge] = []
    for i in occurring:
        x = var_vertex[i]
        rot: list[HalfEdge] = []
        shaded[x] = {}
        entries = occs[i]
        for k, (j, sign) in enumerate(entries):
            halves = [
                (eid, 0 if first_endpoint[eid] == x else 1)
                for eid in triangle_at[(i, j)]
            ]
            rot.extend(halves)
            shaded[x][j] = frozenset(halves)
            ops += 2
            next_sign = entries[(k + 1) % len(entries)][1]
            count = 2 if sign == next_sign else 1
            for t in range(count):
                eid = f"u.x{i}.{j}.{t}"
                edges.append((eid, x, APEX))
                rot.append((eid, 0))
                apex_rotation.append((eid, 1))
                ops += 2
        rotation[x] = rot
    rotation[APEX] = apex_rotation

    records = []
    for i in occurring:
        x = var_vertex[i]
        rot = rotation[x]
        d = len(rot)
        consecutive = {frozenset((rot[t], rot[(t + 1) % d])) for t in range(d)}
        for a, b in itertools.combinations(rot, 2):
            if frozenset((a, b)) not in consecutive:
                records.append((x, a, b, Fraction(1)))
                ops += 1
    graph = Graph(vertices, edges)
    return GadgetGraph(
        graph=graph,
        rotation={v: tuple(r) for v, r in rotation.items()},
        table=TurningCostTable(records),
        formula=f,
        apex=APEX,
        var_vertex=var_vertex,
        shaded=shaded,
        normalized=False,
        build_ops=ops,
    )


def normalize_mod4(g: GadgetGraph) -> GadgetGraph:
    """Bump every variable vertex whose degree is divisible by 4.

    Two parallel apex edges are inserted next to an existing apex edge, which
    raises the degree by two without touching any unshaded region's parity,
    so zero-cost feasibility is unchanged.
    """
    graph = g.graph
    edges = list(graph.edges)
    rotation = {v: list(r) for v, r in g.rotation.items()}
    changed = False
    for i in sorted(g.var_vertex):
        x = g.var_vertex[i]
        if graph.degree(x) % 4 != 0:
            continue
        changed = True
        rot = rotation[x]
        anchor_pos = next(
            t for t, h in enumerate(rot) if h not in _shaded_halves(g, x)
        )
        new_halves = []
        for t in range(2):
            eid = f"u.x{i}.norm{t}"
            edges.append((eid, x, APEX))
            new_halves.append((eid, 0))
        rotation[x] = rot[: anchor_pos + 1] + new_halves + rot[anchor_pos + 1 :]
        anchor_u = (rot[anchor_pos][0], 1)
        upos = rotation[APEX].index(anchor_u)
        rotation[APEX] = (
            rotation[APEX][: upos + 1]
            + [(h[0], 1) for h in new_halves]
            + rotation[APEX][upos + 1 :]
        )
    if not changed:
        return g
    new_graph = Graph(graph.vertices, edges)
    records = []
    for i in sorted(g.var_vertex):
        x = g.var_vertex[i]
        rot = rotation[x]
        d = len(rot)
        consecutive = {frozenset((rot[t], rot[(t + 1) % d])) for t in range(d)}
        for a, b in itertools.combinations(rot, 2):
            if frozenset((a, b)) not in consecutive:
                records.append((x, a, b, Fraction(1)))
    return GadgetGraph(
        graph=new_graph,
        rotation={v: tuple(r) for v, r in rotation.items()},
        table=TurningCostTable(records),
        formula=g.formula,
        apex=g.apex,
        var_vertex=dict(g.var_vertex),
        shaded={v: dict(s) for v, s in g.shaded.items()},
        normalized=True,
        build_ops=g.build_ops,
    )


def _shaded_halves(g: GadgetGraph, x: str) -> set[HalfEdge]:
    return {h for pair in g.shaded[x].values() for h in pair}


def extract_assignment(g: GadgetGraph, c: Circuit) -> dict[int, bool]:
    """Read a satisfying assignment off a zero-cost circuit.

    A variable is false when the circuit follows the triangles of its
    positive occurrences (their shaded pairs stay intact), true when it
    follows the negative ones.
    """
    if circuit_cost(g.graph, g.table, c) != 0:
        raise NotZeroCostError("circuit has nonzero cost")
    ts = transitions_of(g.graph, c)
    assignment: dict[int, bool] = {}
    for i in sorted(g.var_vertex):
        x = g.var_vertex[i]
        matching = set(ts.matching_at(x))
        pos = {j for j, clause in enumerate(g.formula.clauses, start=1) if (i, True) in clause}
        neg = {j for j, clause in enumerate(g.formula.clauses, start=1) if (i, False) in clause}
        intact = {j for j, pair in g.shaded[x].items() if pair in matching}
        if intact == pos and not (intact & neg):
            assignment[i] = False
        elif intact == neg and not (intact & pos):
            assignment[i] = True
        else:
            raise AmbiguousTransitionError(
                f"transition at {x!r} follows neither literal sign cleanly"
            )
    return assignment


@dataclass(frozen=True)
class EquivalenceReport:
    satisfiable: bool
    circuit_found: bool
    agree: bool
    assignment: dict[int, bool] | None
    circuit: Circuit | None


def check_sat_equivalence(f: CnfFormula, max_vars: int = 20) -> EquivalenceReport:
    """Compare truth-table satisfiability with zero-cost circuit existence."""
    if f.num_vars > max_vars:
        raise TooLargeError(f"{f.num_vars} variables exceed the truth-table limit")
    satisfiable, _ = f.is_satisfiable()
    gadget = build_gadget(f)
    circuit = zero_cost_circuit(gadget.graph, gadget.table)
    assignment = None
    if circuit is not None:
        assignment = extract_assignment(gadget, circuit)
    return EquivalenceReport(
        satisfiable=satisfiable,
        circuit_found=circuit is not None,
        agree=satisfiable == (circuit is not None),
        assignment=assignment,
        circuit=circuit,
    )
