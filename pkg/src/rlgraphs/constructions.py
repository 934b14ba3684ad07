"""Builders for the graph families studied here.

Randomness comes from numpy's ``PCG64`` seeded through ``SeedSequence``.
A master seed expands into substreams by ``SeedSequence(seed,
spawn_key=key)``:

* ``random_join(G1, G2, seed)`` draws its cross edges from key ``()``;
* ``oplus_tower`` names every node of its recursion by a branch path of
  0/1 entries.  A leaf (a CGW base graph) at path ``p`` uses key ``p``,
  and the join performed at internal path ``p`` uses key ``p + (2,)``.
  The top-level leaf of a level-1 tower therefore reproduces
  ``cgw(n, seed)`` exactly.

Cross edges are drawn as ``rng.integers(0, 2, size=(n1, n2), dtype=uint8)``
in row-major order over ``V1 x V2``; ``gnp`` draws ``rng.random((n, n)) < p``
and keeps the strict upper triangle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import InvalidParameter, SizeMismatch
from .graph import (
    Graph,
    Permutation,
    Real,
    check_isomorphism_witness,
    check_order,
    circulant,
    complete_graph,
    parse_real,
)

DEFAULT_SEED = 1
_C5 = np.array(
    [[0, 1, 0, 0, 1], [1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [0, 0, 1, 0, 1], [1, 0, 0, 1, 0]],
    dtype=np.uint8,
)


def _stream(seed: int | np.random.SeedSequence, key: tuple[int, ...] = ()) -> np.random.Generator:
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    else:
        ss = np.random.SeedSequence(int(seed) & 0xFFFFFFFFFFFFFFFF, spawn_key=key)
    return np.random.Generator(np.random.PCG64(ss))


def gnp(n: int, seed: int, p: float = 0.5) -> Graph:
    """Erdős–Rényi graph G(n, p) from a seeded stream."""
    check_order(n)
    rng = _stream(seed)
    upper = np.triu(rng.random((n, n)) < p, 1)
    return Graph.from_matrix(upper | upper.T)


def iterated_blowup(level: int) -> Graph:
    """Level 1 is C5; level k+1 blows every vertex of level k up into a C5.

    Vertex ``5*v + i`` is clone ``i`` of vertex ``v``; clones form the
    cycle ``0-1-2-3-4-0``.
    """
    if level < 1:
        raise InvalidParameter(f"blow-up level must be >= 1, got {level}")
    check_order(5**level)
    A = _C5
    for _ in range(level - 1):
        m = A.shape[0]
        A = np.kron(A, np.ones((5, 5), dtype=np.uint8)) + np.kron(np.eye(m, dtype=np.uint8), _C5)
    return Graph.from_matrix(A)


def selfcomp_witness_blowup(level: int) -> tuple[Permutation, bool]:
    """Digit-wise map ``x -> 2x mod 5`` on base-5 vertex labels, and whether it
    sends ``iterated_blowup(level)`` onto its complement."""
    if level < 1:
        raise InvalidParameter(f"blow-up level must be >= 1, got {level}")
    check_order(5**level)
    x = np.arange(5**level)
    image = np.zeros_like(x)
    place = 1
    for _ in range(level):
        image += ((2 * ((x // place) % 5)) % 5) * place
        place *= 5
    perm = tuple(int(v) for v in image)
    return perm, check_isomorphism_witness(iterated_blowup(level), perm, to_complement=True)


def doubled(G: Graph) -> Graph:
    """Two copies of ``G``; ``v_i ~ v'_j`` (``i != j``) iff ``u_i`` and ``u_j`` are non-adjacent.

    Vertex ``i`` is ``v_i`` and ``n + i`` is ``v'_i``.
    """
    n = G.n
    if n < 1:
        raise InvalidParameter("doubled() needs a nonempty graph")
    check_order(2 * n)
    A = G.dense()
    cross = ~A
    np.fill_diagonal(cross, False)
    return Graph.from_matrix(np.block([[A, cross], [cross.T, A]]))


def _join(G1: Graph, G2: Graph, rng: np.random.Generator) -> Graph:
    if G1.n != G2.n:
        raise SizeMismatch(f"random join needs equal orders, got {G1.n} and {G2.n}")
    check_order(G1.n + G2.n)
    cross = rng.integers(0, 2, size=(G1.n, G2.n), dtype=np.uint8).astype(bool)
    return Graph.from_matrix(np.block([[G1.dense(), cross], [cross.T, G2.dense()]]))


def random_join(G1: Graph, G2: Graph, seed: int) -> Graph:
    """Disjoint union of equal-order graphs plus fair-coin cross edges."""
    return _join(G1, G2, _stream(seed))


def complete_bipartite(n: int) -> Graph:
    """K_{n,n} with sides ``0..n-1`` and ``n..2n-1``."""
    check_order(2 * n)
    side = np.arange(2 * n) < n
    return Graph.from_matrix(side[:, None] != side[None, :])


def two_cliques(n: int) -> Graph:
    """Complement of K_{n,n}: two disjoint K_n on ``0..n-1`` and ``n..2n-1``."""
    check_order(2 * n)
    side = np.arange(2 * n) < n
    A = side[:, None] == side[None, :]
    np.fill_diagonal(A, False)
    return Graph.from_matrix(A)


def _cgw(n: int, seed: int, key: tuple[int, ...]) -> Graph:
    return _join(complete_bipartite(n), two_cliques(n), _stream(seed, key))


def cgw(n: int, seed: int) -> Graph:
    """``K_{n,n} ⊕ complement(K_{n,n})`` on ``4n`` vertices."""
    if n < 1:
        raise InvalidParameter(f"cgw needs n >= 1, got {n}")
    return _cgw(n, seed, ())


def oplus_tower(level: int, n: int, seed: int) -> Graph:
    """Level 1 is ``cgw(n, seed)``; level l+1 joins two independently
    randomised copies of level l.  Order ``2n * 2**level``."""
    if level < 1:
        raise InvalidParameter(f"tower level must be >= 1, got {level}")
    if n < 1:
        raise InvalidParameter(f"tower needs n >= 1, got {n}")
    check_order(2 * n * 2**level)

    def build(lvl: int, path: tuple[int, ...]) -> Graph:
        if lvl == 1:
            return _cgw(n, seed, path)
        left = build(lvl - 1, path + (0,))
        right = build(lvl - 1, path + (1,))
        return _join(left, right, _stream(seed, path + (2,)))

    return build(level, ())


def tower_blocks(level: int, n: int) -> list[tuple[str, range]]:
    """Deterministic blocks of ``oplus_tower(level, n, .)`` in vertex order."""
    size = 2 * n
    return [("K_{n,n}" if b % 2 == 0 else "co-K_{n,n}", range(b * size, (b + 1) * size))
            for b in range(2**level)]


# --- declarative specs ---------------------------------------------------

KINDS = ("blowup", "circulant", "doubled", "random_join", "cgw", "tower", "gnp", "complete")


@dataclass(frozen=True)
class ConstructionSpec:
    """JSON-serialisable description of one construction.

    ``params`` per kind: blowup ``{level}``; circulant ``{k, r}`` with ``r``
    a string (``"4.0"``, ``"19/2"``, ``"6+2*sqrt(3)"``); doubled ``{inner}``;
    random_join ``{left, right}``; cgw ``{n}``; tower ``{level, n}``;
    gnp ``{n, p}``; complete ``{n}``.
    """

    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown construction kind {self.kind!r}")

    def to_dict(self) -> dict[str, Any]:
        params = {}
        for key, val in self.params.items():
            params[key] = val.to_dict() if isinstance(val, ConstructionSpec) else val
        return {"kind": self.kind, "params": params, "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ConstructionSpec":
        params = {}
        for key, val in data.get("params", {}).items():
            params[key] = cls.from_dict(val) if isinstance(val, dict) else val
        return cls(data["kind"], params, int(data.get("seed", DEFAULT_SEED)))

    @classmethod
    def from_json(cls, text: str) -> "ConstructionSpec":
        return cls.from_dict(json.loads(text))

    def label(self) -> str:
        inner = ",".join(
            f"{k}={v.label() if isinstance(v, ConstructionSpec) else v}" for k, v in sorted(self.params.items())
        )
        return f"{self.kind}({inner})"

    def build(self) -> Graph:
        p = self.params
        if self.kind == "blowup":
            return iterated_blowup(int(p["level"]))
        if self.kind == "circulant":
            return circulant(int(p["k"]), parse_real(str(p["r"])))
        if self.kind == "doubled":
            return doubled(p["inner"].build())
        if self.kind == "random_join":
            return random_join(p["left"].build(), p["right"].build(), self.seed)
        if self.kind == "cgw":
            return cgw(int(p["n"]), self.seed)
        if self.kind == "tower":
            return oplus_tower(int(p["level"]), int(p["n"]), self.seed)
        if self.kind == "gnp":
            return gnp(int(p["n"]), self.seed, float(p.get("p", 0.5)))
        return complete_graph(int(p["n"]))


def circulant_spec(k: int, r: Real | str) -> ConstructionSpec:
    return ConstructionSpec("circulant", {"k": k, "r": str(r)})
