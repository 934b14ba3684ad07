"""Exact induced-subgraph counts on 3 and 4 vertices.

Two independent routes are provided for each order: a brute-force scan
over all vertex subsets (``*_brute``) and an accelerated kernel built on
dense co-degree matrices.  The accelerated 4-vertex census counts
*non-induced* copies of all eleven 4-vertex graphs from degree, co-degree,
triangle and K4 statistics, then inverts the (unitriangular) subgraph
containment matrix.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Union

import numpy as np

from . import _kernels
from .errors import InvalidParameter, TooLarge
from .graph import Graph, VertexSet, as_fraction

PROFILE3_BRUTE_MAX = 400
CENSUS4_BRUTE_MAX = 120
INDUCED5_MAX = 300
INDUCED6_MAX = 120

_BLOCK = 512


class ClassId4(enum.Enum):
    E4 = "E4"
    K2_2I = "K2+2I"
    TWO_K2 = "2K2"
    P3_I = "P3+I"
    K3_I = "K3+I"
    P4 = "P4"
    K13 = "K13"
    C4 = "C4"
    TPLUS = "TPLUS"
    K4MINUS = "K4MINUS"
    K4 = "K4"

    @property
    def complement(self) -> "ClassId4":
        return _COMPLEMENT4[self]


_COMPLEMENT4 = {
    ClassId4.E4: ClassId4.K4,
    ClassId4.K2_2I: ClassId4.K4MINUS,
    ClassId4.TWO_K2: ClassId4.C4,
    ClassId4.P3_I: ClassId4.TPLUS,
    ClassId4.K3_I: ClassId4.K13,
    ClassId4.P4: ClassId4.P4,
}
_COMPLEMENT4.update({v: k for k, v in list(_COMPLEMENT4.items())})

# (edge count, degree sequence sorted descending) separates all 11 classes
_SIGNATURE4 = {
    (0, (0, 0, 0, 0)): ClassId4.E4,
    (1, (1, 1, 0, 0)): ClassId4.K2_2I,
    (2, (1, 1, 1, 1)): ClassId4.TWO_K2,
    (2, (2, 1, 1, 0)): ClassId4.P3_I,
    (3, (2, 2, 2, 0)): ClassId4.K3_I,
    (3, (2, 2, 1, 1)): ClassId4.P4,
    (3, (3, 1, 1, 1)): ClassId4.K13,
    (4, (2, 2, 2, 2)): ClassId4.C4,
    (4, (3, 2, 2, 1)): ClassId4.TPLUS,
    (5, (3, 3, 2, 2)): ClassId4.K4MINUS,
    (6, (3, 3, 3, 3)): ClassId4.K4,
}


def classify4(A: np.ndarray) -> ClassId4:
    """Class of a 4-vertex graph given by its adjacency matrix."""
    deg = tuple(sorted((int(x) for x in np.asarray(A, dtype=np.int64).sum(axis=1)), reverse=True))
    return _SIGNATURE4[(sum(deg) // 2, deg)]


@dataclass(frozen=True)
class Profile3:
    """Induced 3-vertex counts ``(D0, D1, D2, D3)`` indexed by edge number."""

    counts: tuple[int, int, int, int]

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def reversed(self) -> "Profile3":
        return Profile3(tuple(reversed(self.counts)))

    def as_dict(self) -> dict[str, int]:
        return {f"D{i}": c for i, c in enumerate(self.counts)}


@dataclass(frozen=True)
class Census4:
    """Induced 4-vertex counts for the eleven isomorphism classes."""

    counts: Mapping[ClassId4, int]

    def __getitem__(self, c: ClassId4) -> int:
        return self.counts[c]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def complemented(self) -> "Census4":
        return Census4({c: self.counts[c.complement] for c in ClassId4})

    def as_dict(self) -> dict[str, int]:
        return {c.value: self.counts[c] for c in ClassId4}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Census4):
            return NotImplemented
        return all(self.counts[c] == other.counts[c] for c in ClassId4)


@dataclass(frozen=True)
class DensityVector:
    labels: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __getitem__(self, key: Union[int, str]) -> Fraction:
        if isinstance(key, str):
            key = self.labels.index(key)
        return self.values[key]

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)

    def as_dict(self) -> dict[str, float]:
        return {k: float(v) for k, v in zip(self.labels, self.values)}


def _uint8(G: Graph) -> np.ndarray:
    return G.dense(np.uint8)


# --- brute-force oracles -------------------------------------------------

def profile3_brute(G: Graph) -> Profile3:
    """Count every 3-subset by edge number."""
    if G.n > PROFILE3_BRUTE_MAX:
        raise TooLarge(f"profile3_brute is limited to n <= {PROFILE3_BRUTE_MAX}")
    hist = _kernels.subset_histogram(_uint8(G), 3)
    out = [0, 0, 0, 0]
    for code in range(8):
        out[code.bit_count()] += int(hist[code])
    return Profile3(tuple(out))


@lru_cache(maxsize=None)
def _class4_of_code() -> tuple[ClassId4, ...]:
    from .iso import matrix_of_code

    return tuple(classify4(matrix_of_code(4, c)) for c in range(64))


def census4_brute(G: Graph) -> Census4:
    """Classify every 4-subset by edge count and degree sequence."""
    if G.n > CENSUS4_BRUTE_MAX:
        raise TooLarge(f"census4_brute is limited to n <= {CENSUS4_BRUTE_MAX}")
    hist = _kernels.subset_histogram(_uint8(G), 4)
    counts = dict.fromkeys(ClassId4, 0)
    for code, cls in enumerate(_class4_of_code()):
        counts[cls] += int(hist[code])
    return Census4(counts)


# --- accelerated kernels -------------------------------------------------

def _row_blocks(n: int):
    for start in range(0, n, _BLOCK):
        yield slice(start, min(n, start + _BLOCK))


def _triangles(A: np.ndarray) -> int:
    """Triangle count of a float32 0/1 matrix; each block product is exact below 2**24."""
    total = 0
    for rows in _row_blocks(A.shape[0]):
        C = A[rows] @ A
        total += int(np.multiply(C, A[rows], dtype=np.float64).sum())
    return total // 6


def profile3(G: Graph) -> Profile3:
    """Triangles of ``G`` and of its complement by matrix products; the
    mixed classes follow from cherry counts ``sum_v C(d(v), 2)``."""
    n = G.n
    if n < 3:
        return Profile3((0, 0, 0, 0))
    A = G.dense(np.float32)
    Abar = 1.0 - A
    np.fill_diagonal(Abar, 0.0)
    t3 = _triangles(A)
    t0 = _triangles(Abar)
    d = [int(x) for x in G.degrees]
    cherries = sum(comb(x, 2) for x in d)
    anti_cherries = sum(comb(n - 1 - x, 2) for x in d)
    return Profile3((t0, anti_cherries - 3 * t0, cherries - 3 * t3, t3))


@dataclass(frozen=True)
class _Stats4:
    n: int
    e: int
    deg_pairs: int  # sum_v C(d, 2)
    deg_triples: int  # sum_v C(d, 3)
    triangles: int
    tri_weighted: int  # sum_v t(v) * (d(v) - 2)
    edge_paths: int  # sum over edges (d(u)-1)(d(v)-1)
    codeg_pairs_all: int  # sum over unordered pairs C(d(u,v), 2)
    codeg_pairs_edges: int  # same, restricted to edges
    k4: int


def _k4_count(A: np.ndarray, degrees: np.ndarray) -> int:
    """Count K4 once each: triangles inside the forward neighbourhood of its
    lowest-ranked vertex, ranking vertices by ascending degree."""
    order = np.argsort(degrees, kind="stable")
    B = A[np.ix_(order, order)]
    total = 0
    for u in range(B.shape[0] - 3):
        fwd = u + 1 + np.flatnonzero(B[u, u + 1:])
        if len(fwd) < 3:
            continue
        total += _triangles(B[np.ix_(fwd, fwd)])
    return total


def _stats4(G: Graph) -> _Stats4:
    n = G.n
    A = G.dense(np.float32)
    d = G.degrees.astype(np.int64)
    tri6 = 0
    tri_at = np.zeros(n, dtype=np.int64)
    pairs_all2 = 0
    pairs_edges2 = 0
    for rows in _row_blocks(n):
        C = (A[rows] @ A).astype(np.int64)
        Ab = A[rows].astype(np.int64)
        local = np.arange(rows.stop - rows.start)
        C[local, np.arange(rows.start, rows.stop)] = 0  # drop the diagonal (d(v))
        w = Ab * C
        tri6 += int(w.sum())
        tri_at[rows] = w.sum(axis=1) // 2
        c2 = C * (C - 1) // 2
        pairs_all2 += int(c2.sum())
        pairs_edges2 += int((c2 * Ab).sum())
    dm1 = d - 1
    Ai = A.astype(np.int64)
    edge_paths = int(dm1 @ Ai @ dm1) // 2
    return _Stats4(
        n=n,
        e=int(d.sum()) // 2,
        deg_pairs=sum(comb(int(x), 2) for x in d),
        deg_triples=sum(comb(int(x), 3) for x in d),
        triangles=tri6 // 6,
        tri_weighted=int((tri_at * (d - 2)).sum()),
        edge_paths=edge_paths,
        codeg_pairs_all=pairs_all2 // 2,
        codeg_pairs_edges=pairs_edges2 // 2,
        k4=_k4_count(A, G.degrees),
    )


@lru_cache(maxsize=None)
def _containment4() -> dict[tuple[ClassId4, ClassId4], int]:
    """``s[H, F]``: spanning subgraphs of F isomorphic to H (4 vertices)."""
    from .iso import matrix_of_code

    reps: dict[ClassId4, np.ndarray] = {}
    for code in range(64):
        A = matrix_of_code(4, code)
        reps.setdefault(classify4(A), A)
    out: dict[tuple[ClassId4, ClassId4], int] = {}
    pairs = list(itertools.combinations(range(4), 2))
    for F, AF in reps.items():
        present = [p for p in pairs if AF[p]]
        for r in range(len(present) + 1):
            for sub in itertools.combinations(present, r):
                A = np.zeros((4, 4), dtype=bool)
                for u, v in sub:
                    A[u, v] = A[v, u] = True
                H = classify4(A)
                out[(H, F)] = out.get((H, F), 0) + 1
    return out


_BY_EDGES_DESC = sorted(ClassId4, key=lambda c: -next(k[0] for k, v in _SIGNATURE4.items() if v is c))


def census4(G: Graph) -> Census4:
    n = G.n
    if n < 4:
        return Census4(dict.fromkeys(ClassId4, 0))
    s = _stats4(G)
    subgraph_counts = {
        ClassId4.E4: comb(n, 4),
        ClassId4.K2_2I: s.e * comb(n - 2, 2),
        ClassId4.TWO_K2: comb(s.e, 2) - s.deg_pairs,
        ClassId4.P3_I: s.deg_pairs * (n - 3),
        ClassId4.K3_I: s.triangles * (n - 3),
        ClassId4.P4: s.edge_paths - 3 * s.triangles,
        ClassId4.K13: s.deg_triples,
        ClassId4.C4: s.codeg_pairs_all // 2,
        ClassId4.TPLUS: s.tri_weighted,
        ClassId4.K4MINUS: s.codeg_pairs_edges,
        ClassId4.K4: s.k4,
    }
    contain = _containment4()
    induced_counts: dict[ClassId4, int] = {}
    for H in _BY_EDGES_DESC:
        val = subgraph_counts[H]
        for F, cnt in induced_counts.items():
            val -= contain.get((H, F), 0) * cnt
        induced_counts[H] = val
    return Census4({c: induced_counts[c] for c in ClassId4})


# --- identities ----------------------------------------------------------

def goodman_rhs_twice(G: Graph) -> int:
    """``2 * (D0 + D3)`` as given by the degree sum on the right of Goodman's formula."""
    n = G.n
    return -comb(n, 3) + sum(comb(int(d), 2) + comb(n - 1 - int(d), 2) for d in G.degrees)


def verify_goodman(G: Graph, profile: Profile3 | None = None) -> bool:
    p = profile if profile is not None else profile3(G)
    return 2 * (p[0] + p[3]) == goodman_rhs_twice(G)


def verify_vertex_edge_identities(G: Graph, profile: Profile3 | None = None) -> bool:
    p = profile if profile is not None else profile3(G)
    n, e = G.n, G.e
    ebar = comb(n, 2) - e
    return (3 * p[3] + 2 * p[2] + p[1] == (n - 2) * e
            and 3 * p[0] + 2 * p[1] + p[2] == (n - 2) * ebar)


def disjoint_edge_pairs(G: Graph) -> int:
    return comb(G.e, 2) - sum(comb(int(d), 2) for d in G.degrees)


def verify_edge_pair_identity(G: Graph, census: Census4 | None = None) -> bool:
    """Disjoint edge pairs against the census; uses the brute census when feasible."""
    if census is None:
        census = census4_brute(G) if G.n <= CENSUS4_BRUTE_MAX else census4(G)
    c = census
    lhs = (c[ClassId4.TWO_K2] + c[ClassId4.P4] + c[ClassId4.TPLUS]
           + 2 * c[ClassId4.C4] + 2 * c[ClassId4.K4MINUS] + 3 * c[ClassId4.K4])
    return lhs == disjoint_edge_pairs(G)


# --- degree and co-degree statistics --------------------------------------

def exceptional_vertices(G: Graph, eps: float) -> VertexSet:
    """Vertices with ``|d(v) - n/2| >= eps * n``."""
    eps_q = as_fraction(eps)
    if not 0 < eps_q < Fraction(1, 2):
        raise InvalidParameter(f"eps must lie in (0, 1/2), got {eps}")
    n = G.n
    return tuple(v for v, d in enumerate(G.degrees) if abs(Fraction(2 * int(d) - n, 2)) >= eps_q * n)


def quasirandom_deviation(G: Graph) -> float:
    """``n**-3 * sum_{u<v} |d(u,v) - n/4|`` computed in exact arithmetic."""
    n = G.n
    if n < 2:
        return 0.0
    A = G.dense(np.float32)
    total4 = 0  # sum over ordered pairs u != v of |4 d(u,v) - n|
    for rows in _row_blocks(n):
        C = (A[rows] @ A).astype(np.int64)
        dev = np.abs(4 * C - n)
        local = np.arange(rows.stop - rows.start)
        dev[local, np.arange(rows.start, rows.stop)] = 0
        total4 += int(dev.sum())
    return float(Fraction(total4, 8 * n**3))


# --- densities -----------------------------------------------------------

def densities(census: Profile3 | Census4, n: int) -> DensityVector:
    if isinstance(census, Profile3):
        denom = comb(n, 3)
        labels = ("p0", "p1", "p2", "p3")
        counts = census.counts
        if census.total != denom:
            raise InvalidParameter(f"profile total {census.total} != C({n},3)")
    else:
        denom = comb(n, 4)
        labels = tuple(c.value for c in ClassId4)
        counts = tuple(census[c] for c in ClassId4)
        if census.total != denom:
            raise InvalidParameter(f"census total {census.total} != C({n},4)")
    if denom == 0:
        return DensityVector(labels, tuple(Fraction(0) for _ in counts))
    return DensityVector(labels, tuple(Fraction(c, denom) for c in counts))


# --- arbitrary small patterns --------------------------------------------

def induced_count(G: Graph, H: Graph) -> int:
    """Number of vertex subsets ``S`` with ``G[S]`` isomorphic to ``H``."""
    from .iso import class_table

    k = H.n
    if k > 6:
        raise TooLarge("induced_count supports patterns on at most 6 vertices")
    if k == 0:
        return 1
    if k == 1:
        return G.n
    if k == 2:
        return G.e if H.e else comb(G.n, 2) - G.e
    if k == 3:
        return profile3(G)[H.e]
    if k == 4:
        return census4(G)[classify4(H.dense())]
    limit = INDUCED5_MAX if k == 5 else INDUCED6_MAX
    if G.n > limit:
        raise TooLarge(f"induced_count with |H| = {k} is limited to n <= {limit}")
    table = class_table(k)
    target = table.index_of(H)
    hist = _kernels.subset_histogram(_uint8(G), k)
    return int(hist[table.class_of_code == target].sum())
