from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from rlgraphs.errors import (
    IndexOutOfRange,
    InvalidParameterWarning,
    LoopEdge,
    Overflow,
    SameVertex,
    SizeMismatch,
)
from rlgraphs.graph import (
    OPTIMAL_R,
    OPTIMAL_R_DECIMAL,
    QuadraticSurd,
    blow_up,
    check_isomorphism_witness,
    circulant,
    circulant_threshold,
    codegree,
    codegree_minus,
    complement,
    complete_graph,
    degree,
    empty_graph,
    from_edge_list,
    induced,
    parse_real,
    set_max_order,
)

from conftest import graphs, random_graph

C5 = from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
P4 = from_edge_list(4, [(0, 1), (1, 2), (2, 3)])


def test_from_edge_list_examples():
    K3 = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
    assert K3 == complete_graph(3) and K3.e == 3
    assert from_edge_list(2, []).e == 0
    assert C5.degrees.tolist() == [2] * 5


def test_from_edge_list_dedups_and_validates():
    G = from_edge_list(3, [(0, 1), (1, 0), (0, 1)])
    assert G.e == 1
    with pytest.raises(IndexOutOfRange):
        from_edge_list(3, [(0, 3)])
    with pytest.raises(LoopEdge):
        from_edge_list(3, [(1, 1)])


def test_complement_examples():
    assert complement(complete_graph(4)) == empty_graph(4)
    assert complement(complement(C5)) == C5
    assert check_isomorphism_witness(C5, [2 * i % 5 for i in range(5)], to_complement=True)


@given(graphs(max_n=64))
def test_complement_involution(G):
    assert complement(complement(G)) == G
    assert G.e + complement(G).e == G.n * (G.n - 1) // 2


def test_induced_examples():
    assert induced(C5, {0, 1, 2, 3}) == P4
    assert induced(C5, range(5)) == C5
    assert induced(complete_graph(4), (3, 0, 2)) == complete_graph(3)
    with pytest.raises(IndexOutOfRange):
        induced(C5, [0, 5])


def test_codegree_examples():
    assert codegree(C5, 0, 1) == 0
    assert codegree(C5, 0, 2) == 1
    K4 = complete_graph(4)
    assert all(codegree(K4, u, v) == 2 for u in range(4) for v in range(4) if u != v)
    assert codegree_minus(C5, 0, 1) == 2  # N(0) = {1, 4}, N(1) = {0, 2}
    with pytest.raises(SameVertex):
        codegree(C5, 1, 1)
    with pytest.raises(IndexOutOfRange):
        degree(C5, 7)


@given(graphs(min_n=2, max_n=30))
def test_degree_sum_and_codegree_split(G):
    assert sum(degree(G, u) for u in range(G.n)) == 2 * G.e
    for u in range(G.n):
        for v in range(G.n):
            if u != v:
                assert degree(G, u) == codegree(G, u, v) + codegree_minus(G, u, v)


def test_blow_up_examples():
    K2 = complete_graph(2)
    C4 = from_edge_list(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert blow_up(K2, 2) == C4
    assert blow_up(C5, 1) == C5
    B = blow_up(C5, 2)
    assert B.n == 10 and set(B.degrees.tolist()) == {4}


def test_blow_up_overflow():
    set_max_order(50)
    try:
        with pytest.raises(Overflow):
            blow_up(C5, 11)
    finally:
        set_max_order(None)


def test_circulant_examples():
    G = circulant(12, 4.0)
    assert circulant_threshold(12, Fraction(4)) == 3
    assert set(G.degrees.tolist()) == {5}
    row = sorted(min(abs(v), 12 - abs(v)) for v in G.neighbours(0))
    assert row == [4, 4, 5, 5, 6]
    assert circulant(5, 2.4).e == 0
    with pytest.warns(InvalidParameterWarning):
        assert circulant(6, 2).e == 0


def test_circulant_tie_is_non_edge():
    # k/r = 10 exactly: distance 10 is a non-edge, 11 an edge
    G = circulant(40, Fraction(4))
    assert not G.has_edge(0, 10) and G.has_edge(0, 11)


@pytest.mark.parametrize("r", ["3", "7/2", "4.0", "5.5", "opt", "12", "19/2"])
def test_circulant_regular(r):
    for k in list(range(1, 60)) + [97, 200, 499, 500]:
        G = circulant(k, parse_real(r))
        assert len(set(G.degrees.tolist())) == 1


def test_circulant_matches_float_definition_at_opt():
    r = float(OPTIMAL_R)
    for k in (50, 100, 1000, 2000):
        t = circulant_threshold(k, OPTIMAL_R)
        assert t < k / r < t + 1


def test_optimal_r_constant():
    assert str(OPTIMAL_R) == "6+2*sqrt(3)"
    assert str(OPTIMAL_R_DECIMAL).startswith("9.464101615137754587054892683011744733")
    assert OPTIMAL_R.sign_minus(Fraction(9464101615137754, 10**15)) == 1
    assert OPTIMAL_R.sign_minus(Fraction(9464101615137755, 10**15)) == -1
    assert QuadraticSurd(0, 1, 4).sign_minus(Fraction(2)) == 0


def test_parse_real():
    assert parse_real("opt") is OPTIMAL_R
    assert parse_real("6 + 2*sqrt(3)") is OPTIMAL_R
    assert parse_real("19/2") == Fraction(19, 2)
    with pytest.raises(ValueError):
        parse_real("nine")


def test_isomorphism_witness_examples():
    G = random_graph(12, 0.5, 3)
    assert check_isomorphism_witness(G, list(range(12)))
    assert not check_isomorphism_witness(complete_graph(3), [0, 1, 2], to_complement=True)
    with pytest.raises(SizeMismatch):
        check_isomorphism_witness(C5, [0, 1, 2])


def test_graph_rejects_asymmetric_and_loops():
    A = np.zeros((3, 3), dtype=bool)
    A[0, 1] = True
    with pytest.raises(ValueError):
        from rlgraphs.graph import Graph
        Graph.from_matrix(A)
    A = np.eye(3, dtype=bool)
    with pytest.raises(LoopEdge):
        from rlgraphs.graph import Graph
        Graph.from_matrix(A)


def test_graph_is_immutable_and_hashable():
    G = random_graph(20, 0.5, 1)
    with pytest.raises(ValueError):
        G.packed[0, 0] = 1
    assert hash(G) == hash(complement(complement(G)))
