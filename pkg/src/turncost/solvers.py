"""Exact solvers for minimum turning-cost Eulerian circuits.

Three independent routes are provided and cross-validated by the test suite:

* a brute-force oracle enumerating every transition system,
* a complete search for zero-cost circuits,
* a pipeline through the traveling salesman reduction solved by the
  Held-Karp subset dynamic program.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import (
    Circuit,
    Graph,
    HalfEdge,
    NotEulerianError,
    TurningCostTable,
    canonical_circuit,
    circuit_cost,
    circuit_sort_key,
    find_eulerian_circuit,
    is_eulerian,
    validate_circuit,
)
from .reduction import (
    LineGraphInstance,
    SubdividedGraph,
    WeightedGraph,
    lift_hamiltonian,
    line_graph_weighted,
    subdivide_twice,
)

DEFAULT_ORACLE_BUDGET = 10**8
DEFAULT_MAX_BITMASK = 24


class InstanceTooLargeError(RuntimeError):
    """The oracle's enumeration would exceed its budget; it never truncates."""


class TooLargeError(RuntimeError):
    """The instance exceeds a configured size limit."""


@dataclass(frozen=True)
class SolveResult:
    cost: Fraction
    circuit: Circuit
    method: str


def _double_factorial_odd(d: int) -> int:
    """(d-1)!! for even d: the number of perfect matchings on d points."""
    out = 1
    for k in range(d - 1, 0, -2):
        out *= k
    return out


def perfect_matchings(
    halves: list[HalfEdge], allowed=None
) -> Iterator[tuple[frozenset, ...]]:
    """All perfect matchings of the given half-edges, in deterministic order.

    With ``allowed`` (a set of frozenset pairs), only matchings built entirely
    from allowed pairs are produced.
    """
    halves = sorted(halves)

    def rec(remaining: tuple[HalfEdge, ...]):
        if not remaining:
            yield ()
            return
        first = remaining[0]
        for i in range(1, len(remaining)):
            pair = frozenset((first, remaining[i]))
            if allowed is not None and pair not in allowed:
                continue
            rest = remaining[1:i] + remaining[i + 1 :]
            for tail in rec(rest):
                yield (pair,) + tail

    return rec(tuple(halves))


def _partner_map(matchings: dict[str, tuple[frozenset, ...]]) -> dict[HalfEdge, HalfEdge]:
    partner: dict[HalfEdge, HalfEdge] = {}
    for pairs in matchings.values():
        for pair in pairs:
            a, b = tuple(pair)
            partner[a] = b
            partner[b] = a
    return partner


def _trail_count(g: Graph, partner: dict[HalfEdge, HalfEdge]) -> int:
    """Number of closed trails a full transition system decomposes edges into."""
    parent = {e: e for e in g.edge_ids}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, p in partner.items():
        ra, rb = find(h[0]), find(p[0])
        if ra != rb:
            parent[ra] = rb
    return len({find(e) for e in g.edge_ids})


def _walk_circuit(g: Graph, partner: dict[HalfEdge, HalfEdge]) -> Circuit:
    """Entry half-edge sequence of the single trail of a transition system."""
    start: HalfEdge = (min(g.edge_ids), 0)
    entries = [start]
    cur = start
    while True:
        cur = partner[g.other_end(cur)]
        if cur == start:
            break
        entries.append(cur)
    if len(entries) != g.m:
        raise AssertionError("transition walk did not cover each edge once")
    return tuple(entries)


def oracle_min_circuit(
    g: Graph, w: TurningCostTable, budget: int = DEFAULT_ORACLE_BUDGET
) -> SolveResult:
    """Brute-force minimum: try every combination of per-vertex matchings.

    Only combinations whose pairings chain all edges into a single closed
    trail are circuits; the cheapest one wins, ties broken by canonical
    circuit order.  Raises InstanceTooLargeError rather than ever truncating
    the enumeration.
    """
    if not is_eulerian(g):
        raise NotEulerianError("oracle requires a connected even-degree graph")
    if g.m == 0:
        return SolveResult(Fraction(0), (), "oracle")
    size = 1
    for v in g.vertices:
        size *= _double_factorial_odd(g.degree(v))
        if size > budget:
            raise InstanceTooLargeError(
                f"enumeration would exceed budget of {budget} transition systems"
            )
    per_vertex = [list(perfect_matchings(list(g.half_edges_at(v)))) for v in g.vertices]
    pair_cost: dict[tuple[str, frozenset], Fraction] = {}
    for v, options in zip(g.vertices, per_vertex):
        for matching in options:
            for pair in matching:
                key = (v, pair)
                if key not in pair_cost:
                    pair_cost[key] = w.cost(v, *tuple(pair))
    best_cost: Fraction | None = None
    best_circuit: Circuit | None = None
    for combo in itertools.product(*per_vertex):
        cost = Fraction(0)
        for v, matching in zip(g.vertices, combo):
            for pair in matching:
                cost += pair_cost[(v, pair)]
        if best_cost is not None and cost > best_cost:
            continue
        partner = _partner_map(dict(zip(g.vertices, combo)))
        if _trail_count(g, partner) != 1:
            continue
        circuit = canonical_circuit(g, _walk_circuit(g, partner))
        if (
            best_cost is None
            or cost < best_cost
            or (cost == best_cost and circuit_sort_key(circuit) < circuit_sort_key(best_circuit))
        ):
            best_cost, best_circuit = cost, circuit
    if best_circuit is None:
        raise AssertionError("an Eulerian graph always admits some circuit")
    return SolveResult(best_cost, best_circuit, "oracle")


# -- zero-cost circuits ------------------------------------------------------


def zero_cost_circuit(g: Graph, w: TurningCostTable) -> Circuit | None:
    """A zero-cost Eulerian circuit, or None when no such circuit exists.

    Complete search over the zero-cost matchings of each cost-constrained
    vertex.  Vertices whose pairings all cost zero are left free: once the
    constrained matchings chain the edges into hub-to-hub segments, the free
    vertices can concatenate the segments into one circuit exactly when the
    segment multigraph is connected, and any closed chain avoiding every free
    vertex is fatal.  Both facts prune the search early.
    """
    if not is_eulerian(g):
        raise NotEulerianError("zero-cost search requires an Eulerian graph")
    if g.m == 0:
        return ()

    zero_pairs: dict[str, set] = {}
    free: set[str] = set()
    for v in g.vertices:
        halves = g.half_edges_at(v)
        pairs = {
            frozenset((a, b))
            for a, b in itertools.combinations(halves, 2)
            if w.cost(v, a, b) == 0
        }
        zero_pairs[v] = pairs
        if len(pairs) == len(halves) * (len(halves) - 1) // 2:
            free.add(v)

    constrained = _bfs_vertex_order(g, [v for v in g.vertices if v not in free])
    options: dict[str, list[tuple[frozenset, ...]]] = {}
    for v in constrained:
        opts = list(perfect_matchings(list(g.half_edges_at(v)), allowed=zero_pairs[v]))
        if not opts:
            return None
        options[v] = opts

    partner: dict[HalfEdge, HalfEdge] = {}

    def closes_short_trail(v: str, matching: tuple[frozenset, ...]) -> bool:
        for pair in matching:
            start = tuple(sorted(pair))[0]
            cur = start
            edges_seen = {cur[0]}
            while True:
                nxt = partner.get(g.other_end(cur))
                if nxt is None:
                    break
                if nxt == start:
                    return len(edges_seen) < g.m
                cur = nxt
                edges_seen.add(cur[0])
        return False

    def search(i: int) -> Circuit | None:
        if i == len(constrained):
            return _merge_through_free(g, partner, free)
        v = constrained[i]
        for matching in options[v]:
            for pair in matching:
                a, b = tuple(pair)
                partner[a] = b
                partner[b] = a
            if not closes_short_trail(v, matching):
                found = search(i + 1)
                if found is not None:
                    return found
            for pair in matching:
                a, b = tuple(pair)
                del partner[a]
                del partner[b]
        return None

    found = search(0)
    return None if found is None else canonical_circuit(g, found)


def _bfs_vertex_order(g: Graph, wanted: list[str]) -> list[str]:
    """Wanted vertices in breadth-first order so neighbours are decided together."""
    wanted_set = set(wanted)
    adjacency: dict[str, set[str]] = {v: set() for v in g.vertices}
    for _, u, v in g.edges:
        adjacency[u].add(v)
        adjacency[v].add(u)
    seen: set[str] = set()
    order: list[str] = []
    for root in g.vertices:
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            v = queue.pop(0)
            if v in wanted_set:
                order.append(v)
            for u in sorted(adjacency[v]):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return order


def _merge_through_free(
    g: Graph, partner: dict[HalfEdge, HalfEdge], free: set[str]
) -> Circuit | None:
    """Assemble one circuit from constrained chains, pairing freely at hubs."""
    if not free:
        # fully constrained: need exactly one closed trail covering everything
        start: HalfEdge = (min(g.edge_ids), 0)
        entries = [start]
        cur = start
        while True:
            nxt = partner.get(g.other_end(cur))
            if nxt is None:
                return None
            if nxt == start:
                break
            cur = nxt
            entries.append(cur)
        return tuple(entries) if len(entries) == g.m else None

    segments: list[tuple[str, str, list[HalfEdge]]] = []  # (hub from, hub to, entries)
    consumed_edges: set[str] = set()
    open_ends: set[HalfEdge] = set()
    for hub in sorted(free):
        for h in sorted(g.half_edges_at(hub)):
            if h in open_ends or h[0] in consumed_edges:
                continue
            entries = [h]
            consumed_edges.add(h[0])
            cur = h
            while True:
                tail = g.other_end(cur)
                if g.vertex_of(tail) in free:
                    open_ends.add(h)
                    open_ends.add(tail)
                    segments.append((hub, g.vertex_of(tail), entries))
                    break
                cur = partner[tail]
                entries.append(cur)
                consumed_edges.add(cur[0])
    if len(consumed_edges) != g.m:
        return None  # some chain closed up without touching a free vertex
    seg_edges = [(f"s{k}", a, b) for k, (a, b, _) in enumerate(segments)]
    hub_graph = Graph(sorted(free), seg_edges)
    if not hub_graph.is_connected():
        return None
    merged = find_eulerian_circuit(hub_graph)
    full: list[HalfEdge] = []
    for sid, end in merged:
        entries = segments[int(sid[1:])][2]
        if end == 0:
            full.extend(entries)
        else:
            full.extend(g.other_end(h) for h in reversed(entries))
    return tuple(full)


# -- Held-Karp and the TSP route --------------------------------------------


def held_karp(
    t: WeightedGraph, start: str, max_nodes: int = DEFAULT_MAX_BITMASK
) -> tuple[Fraction, list[str]] | None:
    """Exact minimum-weight Hamiltonian cycle by subset dynamic programming.

    Returns (weight, cycle as a vertex list beginning at ``start``), or None
    when no Hamiltonian cycle exists.  States are (visited set, last vertex);
    absent edges cannot be traversed.
    """
    nodes = t.nodes
    n = len(nodes)
    if n < 3:
        raise ValueError("Hamiltonian cycles need at least 3 vertices")
    if n > max_nodes:
        raise TooLargeError(f"{n} vertices exceed the bitmask limit of {max_nodes}")
    index = {v: i for i, v in enumerate(nodes)}
    s = index[start]
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for i, v in enumerate(nodes):
        for u in t.neighbors(v):
            adj[i].append((index[u], t.weight(v, u)))
    best: dict[tuple[int, int], Fraction] = {(1 << s, s): Fraction(0)}
    parent: dict[tuple[int, int], int | None] = {(1 << s, s): None}
    full = (1 << n) - 1
    for mask in range(1 << n):
        if not mask & (1 << s):
            continue
        for last in range(n):
            state = (mask, last)
            cost = best.get(state)
            if cost is None:
                continue
            for nxt, weight in adj[last]:
                if mask & (1 << nxt):
                    continue
                cand = cost + weight
                key = (mask | (1 << nxt), nxt)
                if key not in best or cand < best[key]:
                    best[key] = cand
                    parent[key] = last
    winner: tuple[Fraction, int] | None = None
    for last in range(n):
        if last == s:
            continue
        cost = best.get((full, last))
        closing = t.weight(nodes[last], nodes[s])
        if cost is None or closing is None:
            continue
        total = cost + closing
        if winner is None or total < winner[0]:
            winner = (total, last)
    if winner is None:
        return None
    total, last = winner
    path = []
    mask = full
    while last is not None:
        path.append(nodes[last])
        nxt = parent[(mask, last)]
        mask ^= 1 << last
        last = nxt
    path.reverse()
    return total, path


def _contracted_hamiltonian(
    line: LineGraphInstance, max_nodes: int
) -> tuple[Fraction, list[str]]:
    """Held-Karp over forced triples of the line graph.

    Every center node has degree 2, so its two incident line edges appear in
    any Hamiltonian cycle; the whole triple collapses to one DP node entered
    at one outer end and left at the other.  Results must match the plain
    Held-Karp run on the uncontracted line graph.
    """
    sub = line.sub
    eids = sorted(sub.triples)
    m = len(eids)
    if m > max_nodes:
        raise TooLargeError(f"{m} edges exceed the bitmask limit of {max_nodes}")
    outers = {e: (sub.triples[e][0], sub.triples[e][2]) for e in eids}
    index = {e: i for i, e in enumerate(eids)}
    full = (1 << m) - 1

    def run(start_exit: str):
        seed = (1, 0, start_exit)
        best: dict[tuple[int, int, str], Fraction] = {seed: Fraction(0)}
        parent: dict[tuple[int, int, str], tuple | None] = {seed: None}
        buckets: dict[int, set[tuple[int, str]]] = {1: {(0, start_exit)}}
        heap = [1]
        popped: set[int] = set()
        while heap:
            mask = heapq.heappop(heap)
            if mask in popped:
                continue
            popped.add(mask)
            # transitions only grow the mask, so smaller masks are final here
            for last, exit_node in sorted(buckets[mask]):
                state = (mask, last, exit_node)
                cost = best[state]
                for e in eids:
                    i = index[e]
                    if mask & (1 << i):
                        continue
                    a, b = outers[e]
                    for entry, leave in ((a, b), (b, a)):
                        weight = line.graph.weight(exit_node, entry)
                        if weight is None:
                            continue
                        nmask = mask | (1 << i)
                        key = (nmask, i, leave)
                        cand = cost + weight
                        if key not in best or cand < best[key]:
                            best[key] = cand
                            parent[key] = (state, entry)
                            if nmask not in buckets:
                                buckets[nmask] = set()
                                heapq.heappush(heap, nmask)
                            buckets[nmask].add((i, leave))
        return best, parent

    start_a, start_b = outers[eids[0]]
    winner = None
    for start_entry, start_exit in ((start_a, start_b), (start_b, start_a)):
        best, parent = run(start_exit)
        for (mask, last, exit_node), cost in best.items():
            if mask != full:
                continue
            closing = line.graph.weight(exit_node, start_entry)
            if closing is None:
                continue
            total = cost + closing
            if winner is None or total < winner[0]:
                winner = (total, (mask, last, exit_node), parent, start_entry)
    if winner is None:
        raise AssertionError("an Eulerian graph always has a Hamiltonian line cycle")
    total, state, parent, start_entry = winner
    blocks: list[tuple[str, str]] = []  # (entry outer, exit outer) per edge
    while state is not None:
        mask, last, exit_node = state
        prev = parent[state]
        if prev is None:
            blocks.append((start_entry, exit_node))
            state = None
        else:
            prev_state, entry = prev
            blocks.append((entry, exit_node))
            state = prev_state
    blocks.reverse()
    cycle: list[str] = []
    for entry, exit_node in blocks:
        eid, _ = sub.origin[entry]
        cycle += [entry, sub.triples[eid][1], exit_node]
    return total, cycle


def solve_via_tsp(
    g: Graph,
    w: TurningCostTable,
    *,
    contract: bool = False,
    max_nodes: int = DEFAULT_MAX_BITMASK,
) -> SolveResult:
    """Minimum-cost circuit through the subdivision / line-graph / TSP pipeline.

    ``contract`` turns on the forced-path contraction, shrinking the dynamic
    program to one node per original edge; off by default, and validated
    against the uncontracted route by the test suite.
    """
    if not is_eulerian(g):
        raise NotEulerianError("the TSP route requires an Eulerian graph")
    if g.m == 0:
        return SolveResult(Fraction(0), (), "tsp")
    sub = subdivide_twice(g, w)
    line = line_graph_weighted(sub)
    if contract:
        weight, cycle = _contracted_hamiltonian(line, max_nodes)
    else:
        nodes = line.graph.nodes
        if len(nodes) > max_nodes:
            raise TooLargeError(
                f"line graph has {len(nodes)} nodes, over the bitmask limit of {max_nodes}"
            )
        outcome = held_karp(line.graph, min(nodes), max_nodes)
        if outcome is None:
            raise AssertionError("an Eulerian graph always has a Hamiltonian line cycle")
        weight, cycle = outcome
    circuit = canonical_circuit(g, lift_hamiltonian(line, cycle))
    validate_circuit(g, circuit)
    if circuit_cost(g, w, circuit) != weight:
        raise AssertionError("lifted circuit cost must equal the cycle weight")
    return SolveResult(weight, circuit, "tsp")


def decide_budget(g: Graph, w: TurningCostTable, c: Fraction) -> bool:
    """Decision form: is there an Eulerian circuit of cost at most ``c``?"""
    c = Fraction(c)
    if c < 0:
        raise ValueError("budget must be non-negative")
    if not is_eulerian(g):
        raise NotEulerianError("decision requires an Eulerian graph")
    try:
        result = oracle_min_circuit(g, w)
    except InstanceTooLargeError:
        result = solve_via_tsp(g, w, contract=True)
    return result.cost <= c
