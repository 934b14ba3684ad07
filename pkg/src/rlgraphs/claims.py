"""Desk-scale checks of the finite consequences of the 3RL results.

Each check returns a :class:`Check` with the measured quantities and a
pass flag at a fixed tolerance.  ``run_all`` drives the ``verify-paper``
command.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .analyzers import clique_number, is_l_universal, obstruction_certificate
from .census import (
    CENSUS4_BRUTE_MAX,
    census4,
    census4_brute,
    densities,
    induced_count,
    profile3,
    profile3_brute,
    quasirandom_deviation,
    verify_edge_pair_identity,
    verify_goodman,
    verify_vertex_edge_identities,
)
from .constructions import cgw, doubled, gnp, iterated_blowup, oplus_tower
from .graph import OPTIMAL_R, Graph, circulant, from_edge_list

R = float(OPTIMAL_R)
P3_LIMIT = ((R - 3) / R) ** 2
P1_LIMIT = 3 / R**2
CGW_SEED = 1
TOWER_SEED = 1
OBSTRUCTION_SEED = 1
RANDOM_SEED = 2016

P5 = from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@dataclass
class Check:
    id: int
    title: str
    passed: bool
    measured: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0


def random_graphs(count: int, n_lo: int, n_hi: int, seed: int = RANDOM_SEED):
    """Seeded G(n, p) sample with n in [n_lo, n_hi] and p uniform in [0.05, 0.95]."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(0.05, 0.95))
        yield gnp(n, seed * 100003 + i, p)


def small_constructions() -> list[tuple[str, Graph]]:
    """Every built construction of order <= 120 used by the checks."""
    out = [
        ("blowup(1)", iterated_blowup(1)),
        ("blowup(2)", iterated_blowup(2)),
        ("circulant(12,4)", circulant(12, 4)),
        ("circulant(100,opt)", circulant(100, OPTIMAL_R)),
        ("circulant(60,opt)", circulant(60, OPTIMAL_R)),
        ("doubled(circulant(30,opt))", doubled(circulant(30, OPTIMAL_R))),
        ("doubled(circulant(60,opt))", doubled(circulant(60, OPTIMAL_R))),
        ("cgw(1)", cgw(1, CGW_SEED)),
        ("cgw(30)", cgw(30, CGW_SEED)),
        ("tower(2,15)", oplus_tower(2, 15, TOWER_SEED)),
        ("tower(3,7)", oplus_tower(3, 7, TOWER_SEED)),
    ]
    return [(name, G) for name, G in out if G.n <= CENSUS4_BRUTE_MAX]


def check_identities(count: int = 1000) -> Check:
    graphs = list(random_graphs(count, 4, 100)) + [G for _, G in small_constructions()]
    bad = [i for i, G in enumerate(graphs)
           if not (verify_goodman(G) and verify_vertex_edge_identities(G) and verify_edge_pair_identity(G))]
    return Check(1, "exact identities (Goodman, vertex-edge, edge-pair)", not bad,
                 {"graphs": len(graphs), "failures": len(bad)})


def check_oracles(count: int = 500) -> Check:
    graphs = list(random_graphs(count, 4, 100, seed=RANDOM_SEED + 1)) + [G for _, G in small_constructions()]
    bad = [i for i, G in enumerate(graphs)
           if profile3(G) != profile3_brute(G) or census4(G) != census4_brute(G)]
    return Check(2, "accelerated census == brute-force oracle", not bad,
                 {"graphs": len(graphs), "mismatches": len(bad)})


def check_circulant_limits(k: int = 2000) -> Check:
    G = circulant(k, OPTIMAL_R)
    p = densities(profile3(G), G.n).as_floats()
    m = {"k": k, "p1": p[1], "p3": p[3], "p1+p3": p[1] + p[3],
         "p3_limit": P3_LIMIT, "p1_limit": P1_LIMIT}
    ok = abs(p[3] - 0.466497) <= 0.01 and abs(p[1] - 0.033503) <= 0.005 and abs(p[1] + p[3] - 0.5) <= 0.005
    return Check(3, "circulant densities at r = 6+2*sqrt(3)", ok, m)


def check_doubled_3rl(k: int = 1000) -> Check:
    H = doubled(circulant(k, OPTIMAL_R))
    p0, p1, p2, p3 = densities(profile3(H), H.n).as_floats()
    m = {"k": k, "n": H.n, "p0": p0, "p1": p1, "p2": p2, "p3": p3}
    ok = (abs(p0 - 0.125) <= 0.01 and abs(p3 - 0.125) <= 0.01
          and abs(p1 - 3 * p3) <= 0.02 and abs(p2 - 3 * p0) <= 0.02)
    return Check(4, "doubled circulant is 3RL", ok, m)


def check_clique_bound(k: int = 100) -> Check:
    G = circulant(k, OPTIMAL_R)
    w1 = clique_number(G, budget=300)
    w2 = clique_number(doubled(G), budget=300)
    m = {"omega_circulant": w1.size, "omega_doubled": w2.size, "exact": w1.exact and w2.exact}
    return Check(5, "clique number <= 9", w1.exact and w2.exact and w1.size <= 9 and w2.size <= 9, m)


def check_transfer_identity(count: int = 200) -> Check:
    bad = 0
    for G in random_graphs(count, 1, 40, seed=RANDOM_SEED + 2):
        pg = profile3_brute(G)
        ph = profile3_brute(doubled(G))
        if ph[3] != 2 * (pg[3] + pg[1]) or ph[0] != 2 * (pg[0] + pg[2]):
            bad += 1
    return Check(6, "D3(f(G)) = 2(D3+D1), D0(f(G)) = 2(D0+D2)", bad == 0, {"graphs": count, "failures": bad})


def check_blowup(level: int = 3) -> Check:
    G = iterated_blowup(level)
    p5 = induced_count(G, P5)
    regular = set(G.degrees.tolist())
    u4 = is_l_universal(G, 4)
    u5 = is_l_universal(G, 5)
    m = {"n": G.n, "P5": p5, "degrees": sorted(regular), "4-universal": u4.verdict,
         "5-universal": u5.verdict, "missing5": u5.missing_names()}
    p5_code = u5.table.codes[u5.table.index_of(P5)]
    ok = (p5 == 0 and regular == {G.n // 2} and u4.verdict and not u5.verdict and p5_code in u5.missing)
    return Check(7, "iterated blow-up: P5-free, regular, 4- but not 5-universal", ok, m)


def check_cgw() -> Check:
    target = (0.125, 0.375, 0.375, 0.125)
    G1 = cgw(150, CGW_SEED)
    G2 = oplus_tower(2, 75, TOWER_SEED)
    d1 = densities(profile3(G1), G1.n).as_floats()
    d2 = densities(profile3(G2), G2.n).as_floats()
    dev1 = max(abs(a - b) for a, b in zip(d1, target))
    dev2 = max(abs(a - b) for a, b in zip(d2, target))
    return Check(8, "CGW graph and tower are 3-random-like", dev1 <= 0.02 and dev2 <= 0.03,
                 {"cgw_densities": d1, "cgw_maxdev": dev1, "tower_densities": d2, "tower_maxdev": dev2})


def check_obstruction() -> Check:
    cert = obstruction_certificate(1, 12, OBSTRUCTION_SEED)
    ok = cert.verdict and cert.omega <= 11 and cert.alpha <= 11
    return Check(9, "tower level 1 is not 48-universal", ok,
                 {"omega": cert.omega, "alpha": cert.alpha, "witness_seed": cert.witness_seed})


def check_four_universal() -> Check:
    graphs = {
        "blowup(3)": iterated_blowup(3),
        "doubled(circulant(1000,opt))": doubled(circulant(1000, OPTIMAL_R)),
        "cgw(150)": cgw(150, CGW_SEED),
    }
    verdicts = {name: is_l_universal(G, 4).verdict for name, G in graphs.items()}
    return Check(10, "3RL instances are 4-universal", all(verdicts.values()), verdicts)


def check_quasirandom() -> Check:
    q_rand = quasirandom_deviation(gnp(500, RANDOM_SEED))
    q_blow = quasirandom_deviation(iterated_blowup(3))
    q_cgw = quasirandom_deviation(cgw(150, CGW_SEED))
    ok = q_rand < 0.02 and q_blow > 0.03 and q_cgw > 0.03
    return Check(11, "quasirandom deviation separates G(n,1/2) from 3RL families", ok,
                 {"gnp500": q_rand, "blowup3": q_blow, "cgw150": q_cgw})


CHECKS: tuple[Callable[[], Check], ...] = (
    check_identities,
    check_oracles,
    check_circulant_limits,
    check_doubled_3rl,
    check_clique_bound,
    check_transfer_identity,
    check_blowup,
    check_cgw,
    check_obstruction,
    check_four_universal,
    check_quasirandom,
)


def run_all(only: set[int] | None = None, progress: Callable[[Check], None] | None = None) -> list[Check]:
    results = []
    for number, fn in enumerate(CHECKS, start=1):
        if only is not None and number not in only:
            continue
        start = time.monotonic()
        res = fn()
        res.seconds = time.monotonic() - start
        results.append(res)
        if progress:
            progress(res)
    return results

