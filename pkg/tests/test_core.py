import random
from fractions import Fraction

import pytest

from turncost import (
    BrokenAdjacencyError,
    DuplicateEdgeError,
    FORBIDDEN,
    Graph,
    MissingEdgeError,
    NotConnectedError,
    TurningCostTable,
    augment_to_eulerian,
    canonical_circuit,
    circuit_cost,
    find_eulerian_circuit,
    is_eulerian,
    transitions_of,
    validate_circuit,
)
from turncost.core import InvalidGraphError, reverse_circuit
from turncost.randgen import random_cost_table, random_eulerian_multigraph

from helpers import bowtie, digon, graph_from, triangle


def test_half_edge_structure():
    g = graph_from([("e", "u", "v"), ("l", "u", "u")])
    assert g.degree("u") == 3  # the loop contributes twice
    assert g.degree("v") == 1
    assert g.vertex_of(("e", 0)) == "u"
    assert g.vertex_of(("l", 1)) == "u"
    assert g.other_end(("e", 0)) == ("e", 1)
    assert g.is_loop("l") and not g.is_loop("e")


def test_duplicate_edge_id_rejected():
    with pytest.raises(InvalidGraphError):
        Graph(["u", "v"], [("e", "u", "v"), ("e", "v", "u")])


def test_is_eulerian_examples():
    dg, _ = digon()
    assert is_eulerian(dg)
    assert not is_eulerian(graph_from([("e", "u", "v")]))
    two_triangles = graph_from(
        [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "a"),
         ("4", "x", "y"), ("5", "y", "z"), ("6", "z", "x")]
    )
    assert not is_eulerian(two_triangles)


def test_augment_examples():
    tri, _ = triangle()
    assert augment_to_eulerian(tri) == tri

    single = graph_from([("e", "u", "v")])
    digon_like = augment_to_eulerian(single)
    assert digon_like.m == 2
    assert is_eulerian(digon_like)

    star = graph_from([("1", "c", "a"), ("2", "c", "b"), ("3", "c", "d")])
    out = augment_to_eulerian(star)
    assert all(out.degree(v) % 2 == 0 for v in out.vertices)
    assert is_eulerian(out)
    assert out.m == star.m + 2


def test_augment_rejects_disconnected():
    g = graph_from([("1", "a", "b"), ("2", "c", "d")])
    with pytest.raises(NotConnectedError):
        augment_to_eulerian(g)


def test_circuit_cost_digon():
    g, w = digon()
    c = (("e1", 0), ("e2", 1))
    assert circuit_cost(g, w, c) == Fraction(5, 6)


def test_circuit_cost_triangle_all_ones():
    g, w = triangle()
    c = (("ab", 0), ("bc", 0), ("ca", 0))
    assert circuit_cost(g, w, c) == 3


def test_circuit_cost_zero_table():
    g, _ = triangle()
    c = (("ab", 0), ("bc", 0), ("ca", 0))
    assert circuit_cost(g, TurningCostTable(), c) == 0


def test_validate_circuit_errors():
    g, _ = triangle()
    validate_circuit(g, (("ab", 0), ("bc", 0), ("ca", 0)))
    with pytest.raises(DuplicateEdgeError):
        validate_circuit(g, (("ab", 0), ("ab", 1), ("ca", 0)))
    with pytest.raises(MissingEdgeError):
        validate_circuit(g, (("ab", 0), ("bc", 0)))
    square = graph_from(
        [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "d"), ("4", "d", "a")]
    )
    with pytest.raises(BrokenAdjacencyError) as err:
        validate_circuit(square, (("1", 0), ("3", 0), ("2", 0), ("4", 0)))
    assert err.value.position == 0


def test_transitions_digon():
    g, _ = digon()
    ts = transitions_of(g, (("e1", 0), ("e2", 1)))
    assert ts.matching_at("u") == (frozenset({("e1", 0), ("e2", 0)}),)
    assert ts.matching_at("v") == (frozenset({("e1", 1), ("e2", 1)}),)


def test_transitions_bowtie_hand_traced():
    g, _ = bowtie()
    # b -> c -> a -> d -> e -> a -> b
    c = (("bc", 0), ("ac", 1), ("ad", 0), ("de", 0), ("ae", 1), ("ab", 0))
    ts = transitions_of(g, c)
    assert set(ts.matching_at("a")) == {
        frozenset({("ac", 0), ("ad", 0)}),
        frozenset({("ae", 0), ("ab", 0)}),
    }


def test_cost_equals_transition_sum_on_random_instances():
    rng = random.Random(7)
    for _ in range(25):
        g = random_eulerian_multigraph(rng, max_edges=6)
        w = random_cost_table(rng, g)
        c = find_eulerian_circuit(g)
        ts = transitions_of(g, c)
        by_parts = sum(
            (w.cost(v, *tuple(pair)) for v in g.vertices for pair in ts.matching_at(v)),
            Fraction(0),
        )
        assert circuit_cost(g, w, c) == by_parts
        # transitions form a perfect matching everywhere
        ts.validate_against(g)


def test_augmented_random_graphs_are_eulerian():
    rng = random.Random(11)
    for _ in range(25):
        g = random_eulerian_multigraph(rng, max_edges=6)
        # knock parity out by adding one pendant edge, then re-augment
        pendant = Graph(
            list(g.vertices) + ["zz"], list(g.edges) + [("p0", g.vertices[0], "zz")]
        )
        assert is_eulerian(augment_to_eulerian(pendant))


def test_canonical_circuit_is_rotation_and_reversal_invariant():
    g, _ = bowtie()
    c = find_eulerian_circuit(g)
    canon = canonical_circuit(g, c)
    assert canon[0][0] == min(e for e, _, _ in g.edges)
    for k in range(len(c)):
        rotated = c[k:] + c[:k]
        assert canonical_circuit(g, rotated) == canon
        assert canonical_circuit(g, reverse_circuit(g, rotated)) == canon


def test_forbidden_cost_is_big_m():
    g, _ = digon()
    w = TurningCostTable(
        [
            ("u", ("e1", 0), ("e2", 0), FORBIDDEN),
            ("v", ("e1", 1), ("e2", 1), Fraction(5, 2)),
        ]
    )
    assert w.big_m == Fraction(7, 2)
    assert w.cost("u", ("e1", 0), ("e2", 0)) == Fraction(7, 2)
    assert w.cost("v", ("e1", 1), ("e2", 1)) == Fraction(5, 2)
    assert w.is_forbidden("u", ("e1", 0), ("e2", 0))


def test_unlisted_pairings_cost_zero():
    g, _ = triangle()
    w = TurningCostTable()
    a, b = g.half_edges_at("a")
    assert w.cost("a", a, b) == 0


def test_table_rejects_bad_entries():
    with pytest.raises(ValueError):
        TurningCostTable([("v", ("e", 0), ("e", 0), Fraction(1))])
    with pytest.raises(ValueError):
        TurningCostTable([("v", ("e", 0), ("e", 1), Fraction(-1))])
    with pytest.raises(ValueError):
        TurningCostTable(
            [
                ("v", ("e", 0), ("e", 1), Fraction(1)),
                ("v", ("e", 1), ("e", 0), Fraction(2)),
            ]
        )


def test_rational_arithmetic_properties():
    rng = random.Random(3)
    for _ in range(200):
        a = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        b = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        c = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
        assert (a + b) + c == a + (b + c)
        assert a.denominator > 0
        from math import gcd

        assert gcd(abs(a.numerator), a.denominator) == 1
