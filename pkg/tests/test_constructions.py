from __future__ import annotations

import json

import pytest
from hypothesis import given

from rlgraphs.analyzers import clique_number
from rlgraphs.census import induced_count, profile3_brute
from rlgraphs.constructions import (
    ConstructionSpec,
    cgw,
    circulant_spec,
    complete_bipartite,
    doubled,
    gnp,
    iterated_blowup,
    oplus_tower,
    random_join,
    selfcomp_witness_blowup,
    tower_blocks,
    two_cliques,
)
from rlgraphs.errors import InvalidParameter, Overflow, SizeMismatch
from rlgraphs.graph import (
    OPTIMAL_R,
    check_isomorphism_witness,
    circulant,
    complete_graph,
    empty_graph,
    from_edge_list,
    induced,
    set_max_order,
)

from conftest import graphs, random_graph

C5 = from_edge_list(5, [(i, (i + 1) % 5) for i in range(5)])
P5 = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


def test_blowup_levels():
    assert iterated_blowup(1) == C5
    for level, deg in ((1, 2), (2, 12), (3, 62)):
        G = iterated_blowup(level)
        assert G.n == 5**level
        assert set(G.degrees.tolist()) == {G.n // 2} == {deg}
    assert induced_count(iterated_blowup(2), P5) == 0
    with pytest.raises(InvalidParameter):
        iterated_blowup(0)


def test_blowup_clone_cycle_order():
    G = iterated_blowup(2)
    for v in range(5):
        for i in range(5):
            assert G.has_edge(5 * v + i, 5 * v + (i + 1) % 5)
            assert not G.has_edge(5 * v + i, 5 * v + (i + 2) % 5)


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_selfcomp_witness(level):
    perm, ok = selfcomp_witness_blowup(level)
    assert ok
    assert sorted(perm) == list(range(5**level))
    if level == 1:
        assert perm == (0, 2, 4, 1, 3)


def test_blowup_overflow():
    set_max_order(100)
    try:
        with pytest.raises(Overflow):
            iterated_blowup(3)
    finally:
        set_max_order(None)


def test_doubled_examples():
    H = doubled(empty_graph(2))
    assert H == from_edge_list(4, [(0, 3), (1, 2)])
    H = doubled(complete_graph(3))
    assert H == from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert profile3_brute(H)[3] == 2
    H = doubled(empty_graph(1))
    assert H.n == 2 and H.e == 0


@given(graphs(min_n=1, max_n=30))
def test_doubled_structure(G):
    H = doubled(G)
    n = G.n
    assert H.n == 2 * n
    assert set(H.degrees.tolist()) == {n - 1}
    assert not any(H.has_edge(i, n + i) for i in range(n))
    assert induced(H, range(n)) == G and induced(H, range(n, 2 * n)) == G


def test_doubled_transfer_identities(rand_graphs):
    for G in rand_graphs:
        pg, ph = profile3_brute(G), profile3_brute(doubled(G))
        assert ph[3] == 2 * (pg[3] + pg[1])
        assert ph[0] == 2 * (pg[0] + pg[2])


def test_random_join():
    K2, I2 = complete_graph(2), empty_graph(2)
    J = random_join(K2, I2, 4)
    assert J.n == 4 and J.has_edge(0, 1) and not J.has_edge(2, 3)
    assert random_join(K2, I2, 4) == J
    with pytest.raises(SizeMismatch):
        random_join(K2, complete_graph(3), 1)


def test_random_join_parts_and_concentration():
    n = 500
    G1, G2 = random_graph(n, 0.3, 1), random_graph(n, 0.7, 2)
    seen = set()
    for seed in (1, 2, 3):
        J = random_join(G1, G2, seed)
        assert induced(J, range(n)) == G1 and induced(J, range(n, 2 * n)) == G2
        cross = int(J.dense()[:n, n:].sum())
        assert abs(cross - n * n / 2) <= 4 * n / 2
        seen.add(cross)
    assert len(seen) == 3


def test_cgw_blocks():
    G = cgw(1, 9)
    assert G.n == 4
    assert G.has_edge(0, 1) and not G.has_edge(2, 3)
    for n in (3, 10):
        for seed in (1, 2):
            G = cgw(n, seed)
            assert induced(G, range(2 * n)) == complete_bipartite(n)
            assert induced(G, range(2 * n, 4 * n)) == two_cliques(n)
    assert cgw(10, 1) != cgw(10, 2)
    with pytest.raises(InvalidParameter):
        cgw(0, 1)


def test_tower_structure():
    assert oplus_tower(1, 7, 3) == cgw(7, 3)
    for level, n in ((1, 5), (2, 50), (3, 6)):
        G = oplus_tower(level, n, 1)
        assert G.n == 4 * n * 2 ** (level - 1)
        blocks = tower_blocks(level, n)
        assert len(blocks) == 2**level
        for kind, vs in blocks:
            B = induced(G, vs)
            assert B == (complete_bipartite(n) if kind == "K_{n,n}" else two_cliques(n))
    a, b = oplus_tower(2, 6, 1), oplus_tower(2, 6, 2)
    assert a != b
    for _, vs in tower_blocks(2, 6):
        assert induced(a, vs) == induced(b, vs)
    assert oplus_tower(2, 6, 1) == a


def test_tower_branches_independent():
    G = oplus_tower(2, 10, 5)
    left, right = induced(G, range(40)), induced(G, range(40, 80))
    assert left != right  # fresh cross edges in each copy


def test_gnp_deterministic():
    assert gnp(30, 1) == gnp(30, 1)
    assert gnp(30, 1) != gnp(30, 2)
    assert gnp(30, 1, p=0.0).e == 0
    assert gnp(30, 1, p=1.0) == complete_graph(30)


@pytest.mark.parametrize("k", [50, 100])
def test_doubled_circulant_clique_bound(k):
    assert clique_number(doubled(circulant(k, OPTIMAL_R))).size <= 9


def test_spec_round_trip_and_build():
    specs = [
        ConstructionSpec("blowup", {"level": 2}),
        circulant_spec(12, "4.0"),
        circulant_spec(40, OPTIMAL_R),
        ConstructionSpec("doubled", {"inner": circulant_spec(20, "opt")}, 3),
        ConstructionSpec("random_join", {"left": ConstructionSpec("complete", {"n": 3}),
                                         "right": ConstructionSpec("gnp", {"n": 3, "p": 0.5}, 2)}, 7),
        ConstructionSpec("cgw", {"n": 4}, 2),
        ConstructionSpec("tower", {"level": 2, "n": 3}, 2),
        ConstructionSpec("gnp", {"n": 10, "p": 0.3}, 4),
        ConstructionSpec("complete", {"n": 5}),
    ]
    for spec in specs:
        again = ConstructionSpec.from_json(spec.to_json())
        assert again.to_json() == spec.to_json()
        assert again.build() == spec.build()
    assert json.loads(specs[2].to_json())["params"]["r"] == "6+2*sqrt(3)"
    assert specs[1].build() == circulant(12, 4)
    assert specs[3].build() == doubled(circulant(20, OPTIMAL_R))
    assert specs[6].build() == oplus_tower(2, 3, 2)
    assert specs[3].label() == "doubled(inner=circulant(k=20,r=opt))"
    with pytest.raises(InvalidParameter):
        ConstructionSpec("petersen", {})


def test_witness_checker_rejects_wrong_map():
    G = iterated_blowup(2)
    assert not check_isomorphism_witness(G, list(range(25)), to_complement=True)
    assert check_isomorphism_witness(G, list(range(25)))
