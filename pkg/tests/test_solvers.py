import itertools
import random
from fractions import Fraction

import pytest

from turncost import (
    InstanceTooLargeError,
    NotEulerianError,
    TooLargeError,
    TurningCostTable,
    WeightedGraph,
    circuit_cost,
    decide_budget,
    held_karp,
    oracle_min_circuit,
    solve_via_tsp,
    validate_circuit,
    zero_cost_circuit,
)
from turncost.randgen import random_cost_table, random_eulerian_multigraph

from helpers import bowtie, brute_force_hamiltonian_min, digon, graph_from, triangle


def test_oracle_examples():
    tri, w = triangle()
    assert oracle_min_circuit(tri, w).cost == 3

    g, w = bowtie()
    result = oracle_min_circuit(g, w)
    assert result.cost == 2
    assert circuit_cost(g, w, result.circuit) == 2

    dg, dw = digon()
    assert oracle_min_circuit(dg, dw).cost == Fraction(5, 6)


def test_oracle_rejects_non_eulerian():
    g = graph_from([("e", "u", "v")])
    with pytest.raises(NotEulerianError):
        oracle_min_circuit(g, TurningCostTable())


def test_oracle_budget():
    g, w = bowtie()
    with pytest.raises(InstanceTooLargeError):
        oracle_min_circuit(g, w, budget=2)


def test_oracle_witness_is_valid_and_costed():
    rng = random.Random(5)
    for _ in range(30):
        g = random_eulerian_multigraph(rng, max_edges=6)
        w = random_cost_table(rng, g)
        result = oracle_min_circuit(g, w)
        validate_circuit(g, result.circuit)
        assert circuit_cost(g, w, result.circuit) == result.cost


def test_zero_cost_examples():
    tri, _ = triangle()
    c = zero_cost_circuit(tri, TurningCostTable())
    assert c is not None
    assert circuit_cost(tri, TurningCostTable(), c) == 0

    g, w = bowtie()
    assert zero_cost_circuit(g, w) is None  # the only cost-0 transition disconnects


def test_zero_cost_iff_oracle_zero():
    rng = random.Random(13)
    for _ in range(40):
        g = random_eulerian_multigraph(rng, max_edges=6)
        w = random_cost_table(rng, g, numerators=(0, 2), denominators=(1, 1))
        circuit = zero_cost_circuit(g, w)
        oracle = oracle_min_circuit(g, w)
        assert (circuit is not None) == (oracle.cost == 0)
        if circuit is not None:
            assert circuit_cost(g, w, circuit) == 0


def test_held_karp_triangle():
    t = WeightedGraph(
        ("1", "2", "3"),
        {
            frozenset(("1", "2")): Fraction(1),
            frozenset(("2", "3")): Fraction(2),
            frozenset(("1", "3")): Fraction(3),
        },
    )
    weight, cycle = held_karp(t, "1")
    assert weight == 6
    assert sorted(cycle) == ["1", "2", "3"]


def test_held_karp_k4_example():
    weights = {
        frozenset(("1", "2")): Fraction(0),
        frozenset(("1", "3")): Fraction(1),
        frozenset(("1", "4")): Fraction(10),
        frozenset(("2", "3")): Fraction(10),
        frozenset(("2", "4")): Fraction(1),
        frozenset(("3", "4")): Fraction(0),
    }
    t = WeightedGraph(("1", "2", "3", "4"), weights)
    assert brute_force_hamiltonian_min(t) == 2
    weight, cycle = held_karp(t, "1")
    assert weight == 2
    assert cycle in (["1", "2", "4", "3"], ["1", "3", "4", "2"])


def test_held_karp_star_has_no_cycle():
    weights = {frozenset(("c", x)): Fraction(1) for x in ("a", "b", "d")}
    t = WeightedGraph(("a", "b", "c", "d"), weights)
    assert held_karp(t, "a") is None


def test_held_karp_node_limit():
    t = WeightedGraph(tuple("abc"), {frozenset(("a", "b")): Fraction(1)})
    with pytest.raises(TooLargeError):
        held_karp(t, "a", max_nodes=2)


def test_held_karp_matches_permutation_minimum_on_complete_graphs():
    rng = random.Random(21)
    for n in (4, 5, 6, 7):
        nodes = tuple(f"n{i}" for i in range(n))
        weights = {
            frozenset((a, b)): Fraction(rng.randint(0, 9), rng.randint(1, 3))
            for a, b in itertools.combinations(nodes, 2)
        }
        t = WeightedGraph(nodes, weights)
        weight, _ = held_karp(t, nodes[0])
        assert weight == brute_force_hamiltonian_min(t)


def test_solve_via_tsp_examples():
    g, w = bowtie()
    assert solve_via_tsp(g, w, contract=True).cost == 2
    dg, dw = digon()
    assert solve_via_tsp(dg, dw).cost == Fraction(5, 6)


def test_tsp_route_equals_oracle_small_random():
    rng = random.Random(42)
    for _ in range(25):
        g = random_eulerian_multigraph(rng, max_edges=5)
        w = random_cost_table(rng, g)
        oracle = oracle_min_circuit(g, w)
        tsp = solve_via_tsp(g, w, contract=True)
        assert oracle.cost == tsp.cost


def test_contracted_route_matches_uncontracted():
    rng = random.Random(99)
    for _ in range(12):
        g = random_eulerian_multigraph(rng, max_edges=4)
        w = random_cost_table(rng, g)
        plain = solve_via_tsp(g, w, contract=False)
        contracted = solve_via_tsp(g, w, contract=True)
        assert plain.cost == contracted.cost
        assert circuit_cost(g, w, plain.circuit) == plain.cost
        assert circuit_cost(g, w, contracted.circuit) == contracted.cost


def test_solver_determinism():
    g, w = bowtie()
    first = oracle_min_circuit(g, w)
    second = oracle_min_circuit(g, w)
    assert first == second
    t1 = solve_via_tsp(g, w, contract=True)
    t2 = solve_via_tsp(g, w, contract=True)
    assert t1 == t2


def test_decide_budget():
    g, w = bowtie()
    assert decide_budget(g, w, Fraction(2))
    assert not decide_budget(g, w, Fraction(1))
    total = sum((value for *_, value in w.records()), Fraction(0))
    assert decide_budget(g, w, total)
    with pytest.raises(ValueError):
        decide_budget(g, w, Fraction(-1))


def test_single_loop_instance():
    g = graph_from([("e", "v", "v")])
    w = TurningCostTable([("v", ("e", 0), ("e", 1), Fraction(4, 7))])
    assert oracle_min_circuit(g, w).cost == Fraction(4, 7)
    assert solve_via_tsp(g, w).cost == Fraction(4, 7)
    assert solve_via_tsp(g, w, contract=True).cost == Fraction(4, 7)
    assert zero_cost_circuit(g, w) is None
