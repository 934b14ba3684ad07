"""Canonical forms and isomorphism-class tables for small orders."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import TooLarge
from .graph import Graph

MAX_CANONICAL_ORDER = 8
MAX_TABLE_ORDER = 6

CanonicalCode = tuple[int, int]

_NAMES = {
    1: {0: "K1"},
    2: {0: "2I", 1: "K2"},
    3: {0: "3I", 1: "K2+I", 3: "P3", 7: "K3"},
}


def pair_positions(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Pairs ``(i, j)``, ``i < j``, in column order; position = ``j*(j-1)/2 + i``."""
    j, i = np.tril_indices(n, -1)
    return i, j


def code_of_matrix(A: np.ndarray) -> int:
    i, j = pair_positions(A.shape[0])
    bits = A[i, j].astype(np.int64)
    return int((bits << np.arange(len(bits), dtype=np.int64)).sum())


def matrix_of_code(n: int, code: int) -> np.ndarray:
    i, j = pair_positions(n)
    bits = (code >> np.arange(len(i))) & 1
    A = np.zeros((n, n), dtype=bool)
    A[i, j] = bits.astype(bool)
    return A | A.T


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def canonical_form(G: Graph) -> CanonicalCode:
    """``(order, code)`` where ``code`` is the least pair-bit code over all relabellings.

    Two graphs are isomorphic iff their canonical forms are equal.
    """
    n = G.n
    if n > MAX_CANONICAL_ORDER:
        raise TooLarge(f"canonical_form supports order <= {MAX_CANONICAL_ORDER}, got {n}")
    if n <= MAX_TABLE_ORDER:
        table = class_table(n)
        return n, table.codes[table.class_of_code[code_of_matrix(G.dense())]]
    return n, _min_code(G.dense())


@dataclass(frozen=True)
class IsoClassTable:
    """One canonical code per isomorphism class of ``order``-vertex graphs.

    ``class_of_code[c]`` is the index into ``codes`` of the class of the
    labelled graph with pair-bit code ``c``.
    """

    order: int
    codes: tuple[int, ...]
    names: tuple[str, ...] | None
    class_of_code: np.ndarray

    def __len__(self) -> int:
        return len(self.codes)

    def graph(self, index: int) -> Graph:
        return Graph.from_matrix(matrix_of_code(self.order, self.codes[index]))

    def name(self, index: int) -> str:
        if self.names is not None:
            return self.names[index]
        return f"G{self.order}#{index}"

    def index_of(self, H: Graph) -> int:
        if H.n != self.order:
            raise ValueError(f"graph of order {H.n} does not belong to the order-{self.order} table")
        return int(self.class_of_code[code_of_matrix(H.dense())])


_NAMED5 = {
    "P5": [(0, 1), (1, 2), (2, 3), (3, 4)],
    "C5": [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
    "house": [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)],
    "bull": [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)],
    "K13+I": [(0, 1), (0, 2), (0, 3)],
    "K14": [(0, 1), (0, 2), (0, 3), (0, 4)],
    "K5": list(itertools.combinations(range(5), 2)),
    "5I": [],
}


def _names5(codes: tuple[int, ...]) -> tuple[str, ...]:
    names = [f"G5#{i}" for i in range(len(codes))]
    index = {c: i for i, c in enumerate(codes)}
    for name, edges in _NAMED5.items():
        A = np.zeros((5, 5), dtype=bool)
        for u, v in edges:
            A[u, v] = A[v, u] = True
        names[index[_min_code(A)]] = name
    return tuple(names)


def _min_code(A: np.ndarray) -> int:
    n = A.shape[0]
    P = _perms(n)
    i, j = pair_positions(n)
    bits = A[P[:, i], P[:, j]].astype(np.int64)
    return int((bits << np.arange(len(i), dtype=np.int64)).sum(axis=1).min())


def _name4(A: np.ndarray) -> str:
    from .census import classify4

    return classify4(A).value


@lru_cache(maxsize=None)
def class_table(order: int) -> IsoClassTable:
    """Enumerate the isomorphism classes on ``order`` vertices (``order <= 6``)."""
    if order > MAX_TABLE_ORDER:
        raise TooLarge(f"class tables exist for order <= {MAX_TABLE_ORDER}, got {order}")
    if order < 0:
        raise ValueError("negative order")
    npairs = order * (order - 1) // 2
    all_codes = np.arange(1 << npairs, dtype=np.int64)
    bits = (all_codes[:, None] >> np.arange(npairs, dtype=np.int64)) & 1
    i, j = pair_positions(order)
    canon = all_codes.copy()
    for perm in _perms(order):
        a, b = perm[i], perm[j]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        weights = np.int64(1) << (hi * (hi - 1) // 2 + lo).astype(np.int64)
        np.minimum(canon, bits @ weights, out=canon)
    reps, class_of_code = np.unique(canon, return_inverse=True)
    codes = tuple(int(c) for c in reps)
    names: tuple[str, ...] | None = None
    if order in _NAMES:
        names = tuple(_NAMES[order][c] for c in codes)
    elif order == 4:
        names = tuple(_name4(matrix_of_code(4, c)) for c in codes)
    elif order == 5:
        names = _names5(codes)
    elif order == 0:
        names = ("K0",)
    out = class_of_code.astype(np.int64)
    out.flags.writeable = False
    return IsoClassTable(order, codes, names, out)


def enumerate_classes(order: int) -> IsoClassTable:
    return class_table(order)
