"""Universality scans, exact clique numbers and the tower obstruction certificate."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .census import (
    INDUCED5_MAX,
    INDUCED6_MAX,
    census4,
    classify4,
    densities,
    profile3,
)
from .constructions import (
    ConstructionSpec,
    DEFAULT_SEED,
    _stream,
    gnp,
    oplus_tower,
    tower_blocks,
)
from .errors import CertificateFailed, InvalidParameter, Timeout, TooLarge
from .graph import Graph, VertexSet, as_fraction, complement, induced
from .graph6 import encode
from .iso import IsoClassTable, canonical_form, class_table, enumerate_classes

__all__ = [
    "canonical_form",
    "enumerate_classes",
    "UniversalityReport",
    "is_l_universal",
    "CliqueResult",
    "clique_number",
    "independence_number",
    "has_induced",
    "ObstructionCertificate",
    "obstruction_certificate",
    "limit_table",
]

SCHEMA_VERSION = 1
PREPASS_SAMPLES = 20000


# --- universality --------------------------------------------------------

@dataclass(frozen=True)
class UniversalityReport:
    order: int
    present: tuple[int, ...]
    missing: tuple[int, ...]
    verdict: bool
    table: IsoClassTable = field(repr=False, compare=False)
    witnesses: dict[int, VertexSet] = field(default_factory=dict, repr=False, compare=False)
    method: str = ""

    def missing_names(self) -> list[str]:
        return [self.table.name(self.table.codes.index(c)) for c in self.missing]

    def to_dict(self) -> dict[str, Any]:
        t = self.table

        def describe(code: int) -> dict[str, Any]:
            i = t.codes.index(code)
            return {"name": t.name(i), "code": code, "graph6": encode(t.graph(i)).decode("ascii")}

        return {
            "schema": SCHEMA_VERSION,
            "l": self.order,
            "verdict": self.verdict,
            "classes": len(t),
            "present": len(self.present),
            "missing": [describe(c) for c in self.missing],
            "method": self.method,
        }


def _class_presence_small(G: Graph, table: IsoClassTable) -> np.ndarray:
    """Exact presence flags for orders <= 4 from the census kernels."""
    l = table.order
    found = np.zeros(len(table), dtype=bool)
    n = G.n
    if n < l:
        return found
    if l <= 1:
        found[:] = True
        return found
    if l == 2:
        found[table.index_of(Graph.from_matrix(np.zeros((2, 2), bool)))] = G.e < n * (n - 1) // 2
        found[table.index_of(Graph.from_matrix(~np.eye(2, dtype=bool)))] = G.e > 0
        return found
    if l == 3:
        p = profile3(G)
        for i, code in enumerate(table.codes):
            found[i] = p[code.bit_count()] > 0
        return found
    c = census4(G)
    for i in range(len(table)):
        found[i] = c[classify4(table.graph(i).dense())] > 0
    return found


def is_l_universal(G: Graph, l: int, seed: int = DEFAULT_SEED, samples: int = PREPASS_SAMPLES) -> UniversalityReport:
    """Decide whether every ``l``-vertex graph occurs induced in ``G``.

    A seeded sampling pass marks classes that are easy to find; the rest
    are settled exactly (census kernels for ``l <= 4``, an exhaustive
    lexicographic subset scan that stops once all classes are seen for
    ``l`` in {5, 6}).
    """
    if l < 1 or l > 6:
        raise TooLarge(f"universality is supported for 1 <= l <= 6, got {l}")
    if l == 5 and G.n > INDUCED5_MAX or l == 6 and G.n > INDUCED6_MAX:
        raise TooLarge(f"exhaustive {l}-subset scan limited to n <= {INDUCED5_MAX if l == 5 else INDUCED6_MAX}")
    table = class_table(l)
    found = np.zeros(len(table), dtype=bool)
    witnesses: dict[int, VertexSet] = {}
    method = "prepass"
    if G.n >= l and samples > 0:
        adj = G.dense(np.uint8)
        codes, subsets = _kernels.sampled_codes(adj, l, samples, _stream(seed, (7, l)))
        if len(codes):
            cls = table.class_of_code[codes]
            first = np.unique(cls, return_index=True)
            for c, pos in zip(*first):
                found[c] = True
                witnesses[table.codes[c]] = tuple(int(v) for v in subsets[pos])
    if not found.all() and G.n >= l:
        if l <= 4:
            found |= _class_presence_small(G, table)
            method += "+census"
        else:
            need = ~found
            out = _kernels.first_witnesses(G.dense(np.uint8), l, table.class_of_code, need)
            for c in np.flatnonzero(need):
                if out[c, 0] >= 0:
                    found[c] = True
                    witnesses[table.codes[c]] = tuple(int(v) for v in out[c])
            method += "+exhaustive"
    present = tuple(table.codes[i] for i in np.flatnonzero(found))
    missing = tuple(table.codes[i] for i in np.flatnonzero(~found))
    return UniversalityReport(l, present, missing, not missing, table, witnesses, method)


def has_induced(G: Graph, H: Graph) -> tuple[bool, VertexSet | None]:
    """Whether ``G`` contains ``H`` induced, with the lexicographically least witness."""
    k = H.n
    if k > 6:
        raise TooLarge("has_induced supports patterns on at most 6 vertices")
    if k == 5 and G.n > INDUCED5_MAX or k == 6 and G.n > INDUCED6_MAX:
        raise TooLarge(f"has_induced with |H| = {k} exceeds the scan size limit")
    if k == 0:
        return True, ()
    table = class_table(k)
    need = np.zeros(len(table), dtype=bool)
    target = table.index_of(H)
    need[target] = True
    out = _kernels.first_witnesses(G.dense(np.uint8), k, table.class_of_code, need)
    if out[target, 0] < 0:
        return False, None
    return True, tuple(int(v) for v in out[target])


# --- cliques -------------------------------------------------------------

@dataclass(frozen=True)
class CliqueResult:
    size: int
    witness: VertexSet
    exact: bool = True
    nodes: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {"size": self.size, "witness": list(self.witness), "exact": self.exact, "nodes": self.nodes}


def _colour_order(P: int, nbrs: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of candidate set ``P`` (bitset over ranks).

    Returns vertices and their colour numbers in nondecreasing colour order.
    """
    verts: list[int] = []
    colours: list[int] = []
    colour = 0
    uncoloured = P
    while uncoloured:
        colour += 1
        Q = uncoloured
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~nbrs[v] & ~low
            uncoloured &= ~low
            verts.append(v)
            colours.append(colour)
    return verts, colours


def clique_number(G: Graph, budget: float | None = None) -> CliqueResult:
    """Exact maximum clique by branch and bound with greedy-colouring bounds.

    Vertices are ranked by descending degree (ties by index).  With a
    ``budget`` in seconds the search may stop early; the result then has
    ``exact=False`` and reports the best clique found.
    """
    n = G.n
    if n == 0:
        return CliqueResult(0, ())
    order = sorted(range(n), key=lambda v: (-int(G.degrees[v]), v))
    rank = {v: i for i, v in enumerate(order)}
    rows = G.rows
    nbrs = []
    for v in order:
        bits = 0
        r = rows[v]
        while r:
            low = r & -r
            bits |= 1 << rank[low.bit_length() - 1]
            r &= r - 1
        nbrs.append(bits)

    best: list[int] = []
    best_size = 0
    deadline = None if budget is None else time.monotonic() + budget
    nodes = 0
    timed_out = False
    current: list[int] = []

    def expand(P: int) -> None:
        nonlocal best, best_size, nodes, timed_out
        nodes += 1
        if deadline is not None and nodes & 255 == 0 and time.monotonic() > deadline:
            timed_out = True
        verts, colours = _colour_order(P, nbrs)
        for i in range(len(verts) - 1, -1, -1):
            if timed_out or len(current) + colours[i] <= best_size:
                return
            v = verts[i]
            current.append(v)
            newP = P & nbrs[v]
            if newP:
                expand(newP)
            elif len(current) > best_size:
                best_size = len(current)
                best = list(current)
            current.pop()
            P &= ~(1 << v)

    expand((1 << n) - 1)
    witness = tuple(sorted(order[i] for i in best))
    return CliqueResult(best_size, witness, exact=not timed_out, nodes=nodes)


def independence_number(G: Graph, budget: float | None = None) -> CliqueResult:
    return clique_number(complement(G), budget=budget)


# --- obstruction certificate ----------------------------------------------

@dataclass(frozen=True)
class ObstructionCertificate:
    """Evidence that ``oplus_tower(l, n, .)`` is not ``24 l 2**l``-universal.

    Any ``m`` vertices of the tower put ``m / 2**l = 24 l`` vertices into
    one deterministic block; a block is K_{n,n} or two disjoint K_n, so
    those vertices contain an independent set or clique of size ``12 l``.
    A witness ``W`` on ``m`` vertices with ``omega, alpha < 12 l`` can
    therefore not occur induced.
    """

    l: int
    m: int
    n: int
    seed: int
    witness_seed: int
    witness_graph6: str
    omega: int
    alpha: int
    blocks: tuple[str, ...]
    blocks_ok: bool
    attempts: int
    verdict: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "l": self.l,
            "m": self.m,
            "n": self.n,
            "seed": self.seed,
            "witness_seed": self.witness_seed,
            "witness_graph6": self.witness_graph6,
            "omega": self.omega,
            "alpha": self.alpha,
            "threshold": 12 * self.l,
            "per_block": self.m // 2**self.l,
            "blocks": list(self.blocks),
            "blocks_ok": self.blocks_ok,
            "attempts": self.attempts,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _block_kind(B: Graph) -> str | None:
    """'K_{n,n}' or 'co-K_{n,n}' if ``B`` is one of them on its vertex halves."""
    h = B.n // 2
    side = np.arange(B.n) < h
    bip = side[:, None] != side[None, :]
    A = B.dense()
    if np.array_equal(A, bip):
        return "K_{n,n}"
    co = ~bip
    np.fill_diagonal(co, False)
    if np.array_equal(A, co):
        return "co-K_{n,n}"
    return None


def witness_graph(m: int, seed: int) -> Graph:
    """Random graph used as the non-embeddable witness."""
    return gnp(m, seed)


def obstruction_certificate(
    l: int,
    n: int,
    seed: int,
    max_retries: int = 8,
    budget: float | None = 600.0,
) -> ObstructionCertificate:
    """Build and check the non-universality certificate for the level-``l`` tower.

    Witness candidates are ``witness_graph(m, seed + attempt)``; a candidate
    with a clique or independent set of size ``12 l`` is discarded.
    Raises :class:`CertificateFailed` after ``max_retries`` rejections and
    :class:`Timeout` if a clique search exceeds ``budget``.
    """
    if l < 1:
        raise InvalidParameter(f"l must be >= 1, got {l}")
    m = 24 * l * 2**l
    threshold = 12 * l
    tower = oplus_tower(l, n, seed)
    kinds = []
    blocks_ok = True
    for expected, vs in tower_blocks(l, n):
        kind = _block_kind(induced(tower, vs))
        kinds.append(kind or "other")
        blocks_ok &= kind == expected
    blocks_ok &= len(kinds) == 2**l and m // 2**l == 24 * l

    for attempt in range(max_retries):
        wseed = seed + attempt
        W = witness_graph(m, wseed)
        om = clique_number(W, budget=budget)
        al = independence_number(W, budget=budget)
        if not (om.exact and al.exact):
            raise Timeout(f"clique search on the {m}-vertex witness exceeded {budget}s")
        if om.size < threshold and al.size < threshold:
            return ObstructionCertificate(
                l, m, n, seed, wseed, encode(W).decode("ascii"), om.size, al.size,
                tuple(kinds), blocks_ok, attempt + 1, blocks_ok,
            )
    raise CertificateFailed(f"no witness with omega, alpha < {threshold} in {max_retries} attempts")


# --- limit tables --------------------------------------------------------

FAMILIES = ("circulant", "doubled-circulant", "blowup", "cgw", "tower", "complete", "gnp")


def family_spec(family: str, k: int, r: str = "6+2*sqrt(3)", seed: int = DEFAULT_SEED, level: int = 2) -> ConstructionSpec:
    """Member ``k`` of a named family as a construction spec."""
    if family == "circulant":
        return ConstructionSpec("circulant", {"k": k, "r": r}, seed)
    if family == "doubled-circulant":
        return ConstructionSpec("doubled", {"inner": ConstructionSpec("circulant", {"k": k, "r": r}, seed)}, seed)
    if family == "blowup":
        return ConstructionSpec("blowup", {"level": k}, seed)
    if family == "cgw":
        return ConstructionSpec("cgw", {"n": k}, seed)
    if family == "tower":
        return ConstructionSpec("tower", {"level": level, "n": k}, seed)
    if family == "complete":
        return ConstructionSpec("complete", {"n": k}, seed)
    if family == "gnp":
        return ConstructionSpec("gnp", {"n": k, "p": 0.5}, seed)
    raise InvalidParameter(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def limit_row(G: Graph, eps: float, k: int | None = None) -> dict[str, Any]:
    dens = densities(profile3(G), G.n)
    p0, p1, p2, p3 = dens.values
    eighth = Fraction(1, 8)
    eps_q = as_fraction(eps)
    goodman_dev = p0 + p3 - Fraction(1, 4)
    dev13 = p1 - 3 * p3
    dev20 = p2 - 3 * p0
    return {
        "k": k,
        "n": G.n,
        "p0": float(p0),
        "p1": float(p1),
        "p2": float(p2),
        "p3": float(p3),
        "goodman_dev": float(goodman_dev),
        "dev_p1_3p3": float(dev13),
        "dev_p2_3p0": float(dev20),
        "goodman": abs(goodman_dev) < eps_q,
        "rl3": abs(p0 - eighth) < eps_q and abs(p3 - eighth) < eps_q,
        "mixed": abs(dev13) < eps_q and abs(dev20) < eps_q,
    }


def limit_table(
    family: str | Callable[[int], Graph],
    ks: Iterable[int],
    eps: float = 0.01,
    **params: Any,
) -> list[dict[str, Any]]:
    """Densities and classification flags for each member ``k`` of a family.

    ``family`` is a name from :data:`FAMILIES` (extra keyword arguments go
    to :func:`family_spec`) or a callable ``k -> Graph``.
    """
    rows = []
    for k in ks:
        if callable(family):
            G = family(k)
        else:
            G = family_spec(family, k, **params).build()
        rows.append(limit_row(G, eps, k))
    return rows
