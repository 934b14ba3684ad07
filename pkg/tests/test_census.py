from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given

from rlgraphs.census import (
    Census4,
    ClassId4,
    Profile3,
    census4,
    census4_brute,
    classify4,
    densities,
    disjoint_edge_pairs,
    exceptional_vertices,
    goodman_rhs_twice,
    induced_count,
    profile3,
    profile3_brute,
    quasirandom_deviation,
    verify_edge_pair_identity,
    verify_goodman,
    verify_vertex_edge_identities,
)
from rlgraphs.constructions import complete_bipartite, doubled, gnp, iterated_blowup
from rlgraphs.errors import InvalidParameter, TooLarge
from rlgraphs.graph import (
    OPTIMAL_R,
    Graph,
    circulant,
    codegree,
    complement,
    complete_graph,
    empty_graph,
    from_edge_list,
)

from conftest import graphs, random_graph

C5 = from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
K4 = complete_graph(4)
P5 = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4)])

# independent oracle: networkx subgraph enumeration on iterated_blowup(2)
BLOWUP2_CENSUS = {
    "E4": 125, "K2+2I": 1125, "2K2": 750, "P3+I": 1500, "K3+I": 1250, "P4": 3150,
    "K13": 1250, "C4": 750, "TPLUS": 1500, "K4MINUS": 1125, "K4": 125,
}


def _census_itertools(G: Graph) -> dict[str, int]:
    A = G.dense()
    out = dict.fromkeys((c.value for c in ClassId4), 0)
    for q in itertools.combinations(range(G.n), 4):
        out[classify4(A[np.ix_(q, q)]).value] += 1
    return out


def test_profile3_examples():
    assert profile3_brute(C5).counts == (0, 5, 5, 0)
    assert profile3_brute(K4).counts == (0, 0, 0, 4)
    assert profile3_brute(empty_graph(4)).counts == (4, 0, 0, 0)
    assert profile3(C5).counts == (0, 5, 5, 0)
    assert profile3(circulant(12, 4)).counts == (36, 72, 108, 4)
    G = gnp(50, 7)
    assert profile3(G) == profile3_brute(G)


def test_census4_examples():
    c = census4_brute(C5)
    assert c[ClassId4.P4] == 5 and c.total == 5
    assert census4_brute(K4)[ClassId4.K4] == 1
    assert census4_brute(from_edge_list(4, [(0, 1), (2, 3)]))[ClassId4.TWO_K2] == 1
    assert census4(C5) == c
    B = iterated_blowup(2)
    assert census4_brute(B).as_dict() == BLOWUP2_CENSUS
    assert census4(B).as_dict() == BLOWUP2_CENSUS
    G = gnp(100, 11)
    assert census4(G) == census4_brute(G)


def test_census4_brute_matches_itertools():
    for seed in range(8):
        G = random_graph(14, 0.1 + 0.1 * seed, seed)
        assert census4_brute(G).as_dict() == _census_itertools(G)


def test_classify4_covers_all_classes():
    from rlgraphs.iso import class_table, matrix_of_code

    table = class_table(4)
    seen = {classify4(matrix_of_code(4, c)) for c in table.codes}
    assert seen == set(ClassId4)


def test_brute_size_limits():
    with pytest.raises(TooLarge):
        census4_brute(empty_graph(121))
    with pytest.raises(TooLarge):
        profile3_brute(empty_graph(401))


@given(graphs(max_n=30))
def test_oracle_equivalence_property(G):
    assert profile3(G) == profile3_brute(G)
    assert census4(G) == census4_brute(G)


def test_oracle_equivalence_seeded(rand_graphs):
    for G in rand_graphs:
        assert profile3(G) == profile3_brute(G)
        assert census4(G) == census4_brute(G)


@given(graphs(max_n=30))
def test_complement_duality(G):
    H = complement(G)
    assert profile3(H) == profile3(G).reversed()
    assert census4(H) == census4(G).complemented()


def test_class_pairing():
    pairs = {("E4", "K4"), ("K2+2I", "K4MINUS"), ("2K2", "C4"), ("P3+I", "TPLUS"), ("K3+I", "K13"), ("P4", "P4")}
    for a, b in pairs:
        assert ClassId4(a).complement is ClassId4(b)
        assert ClassId4(b).complement is ClassId4(a)


@given(graphs(max_n=30))
def test_totals(G):
    assert profile3(G).total == comb(G.n, 3)
    assert census4(G).total == comb(G.n, 4)


def test_identity_examples():
    assert goodman_rhs_twice(C5) == 0 and verify_goodman(C5)
    assert goodman_rhs_twice(K4) == 8 and verify_goodman(K4)
    assert verify_vertex_edge_identities(C5) and verify_vertex_edge_identities(K4)
    assert disjoint_edge_pairs(C5) == 5 and verify_edge_pair_identity(C5)
    assert disjoint_edge_pairs(K4) == 3 and verify_edge_pair_identity(K4)


@given(graphs(max_n=40))
def test_identities_property(G):
    assert verify_goodman(G)
    assert verify_vertex_edge_identities(G)
    assert verify_edge_pair_identity(G)
    assert verify_edge_pair_identity(G, census4(G))


def test_identities_detect_corruption():
    p = profile3(C5)
    assert not verify_goodman(C5, Profile3((1, 4, 5, 0)))
    assert not verify_vertex_edge_identities(C5, Profile3((0, 6, 4, 0)))
    bad = dict(census4(C5).counts)
    bad[ClassId4.P4] -= 1
    bad[ClassId4.C4] += 1
    assert not verify_edge_pair_identity(C5, Census4(bad))
    assert verify_goodman(C5, p)


def test_edge_insertion_changes_triangles_by_codegree():
    rng = np.random.default_rng(8)
    for trial in range(60):
        G = random_graph(int(rng.integers(5, 30)), float(rng.uniform(0.2, 0.8)), trial)
        A = G.dense()
        non_edges = [(u, v) for u in range(G.n) for v in range(u + 1, G.n) if not A[u, v]]
        if not non_edges:
            continue
        u, v = non_edges[int(rng.integers(len(non_edges)))]
        A[u, v] = A[v, u] = True
        H = Graph.from_matrix(A)
        assert profile3_brute(H)[3] - profile3_brute(G)[3] == codegree(G, u, v)


def test_densities():
    d = densities(profile3(C5), 5)
    assert d.values == (0, Fraction(1, 2), Fraction(1, 2), 0)
    assert d["p1"] == Fraction(1, 2)
    assert densities(census4(K4), 4)["K4"] == 1
    G = gnp(40, 2)
    assert sum(densities(census4(G), 40).values) == 1
    assert abs(sum(densities(profile3(G), 40).as_floats()) - 1) < 1e-12
    with pytest.raises(InvalidParameter):
        densities(profile3(C5), 6)


def test_exceptional_vertices():
    H = doubled(circulant(100, OPTIMAL_R))
    assert exceptional_vertices(H, 0.01) == ()
    assert exceptional_vertices(complete_bipartite(10), 0.01) == ()
    star = from_edge_list(10, [(0, i) for i in range(1, 10)])
    assert exceptional_vertices(star, 0.1) == tuple(range(10))
    # boundary is inclusive: |d - n/2| = 1 = 0.1 * 10
    near = from_edge_list(10, [(0, i) for i in range(1, 7)] + [(1, 2), (3, 4), (5, 6), (7, 8), (8, 9), (7, 9)])
    assert 0 in exceptional_vertices(near, 0.1)
    for eps in (0, 0.5, -1):
        with pytest.raises(InvalidParameter):
            exceptional_vertices(star, eps)


@pytest.mark.parametrize("n", [4, 8, 21, 100])
def test_quasirandom_closed_forms(n):
    # all co-degrees n-2 in K_n and 0 in the empty graph
    assert quasirandom_deviation(complete_graph(n)) == pytest.approx(comb(n, 2) * abs(n - 2 - n / 4) / n**3, abs=1e-15)
    assert quasirandom_deviation(empty_graph(n)) == pytest.approx(comb(n, 2) * (n / 4) / n**3, abs=1e-15)


def test_quasirandom_limits():
    assert quasirandom_deviation(complete_graph(2000)) == pytest.approx(0.375, abs=1e-3)
    assert quasirandom_deviation(empty_graph(2000)) == pytest.approx(0.125, abs=1e-3)
    assert quasirandom_deviation(gnp(200, 3)) < 0.02


def test_quasirandom_brute():
    G = random_graph(25, 0.4, 17)
    n = G.n
    ref = sum(abs(Fraction(codegree(G, u, v)) - Fraction(n, 4)) for u in range(n) for v in range(u + 1, n))
    assert quasirandom_deviation(G) == float(ref / n**3)


def test_circulant_convergence():
    r = float(OPTIMAL_R)
    target3, target1 = ((r - 3) / r) ** 2, 3 / r**2
    errs = []
    for k in (500, 1000, 2000):
        d = densities(profile3(circulant(k, OPTIMAL_R)), k).as_floats()
        errs.append(abs(d[3] - target3))
        assert abs(d[1] - target1) <= 5 / k * 10
        assert abs(d[1] + d[3] - 0.5) <= 5 / k
    assert errs[-1] < 0.002


def test_induced_count_examples():
    assert induced_count(C5, P5) == 0
    assert induced_count(complete_graph(5), complete_graph(3)) == 10
    assert induced_count(iterated_blowup(2), P5) == 0
    assert induced_count(C5, from_edge_list(4, [(0, 1), (1, 2), (2, 3)])) == 5
    assert induced_count(C5, C5) == 1
    assert induced_count(gnp(9, 1), empty_graph(6)) >= 0
    with pytest.raises(TooLarge):
        induced_count(empty_graph(301), P5)
    with pytest.raises(TooLarge):
        induced_count(empty_graph(5), empty_graph(7))


def test_induced_count_five_against_itertools():
    from rlgraphs.iso import canonical_form

    G = random_graph(11, 0.5, 5)
    target = canonical_form(P5)
    ref = sum(1 for S in itertools.combinations(range(11), 5)
              if canonical_form(Graph.from_matrix(G.dense()[np.ix_(S, S)])) == target)
    assert induced_count(G, P5) == ref
