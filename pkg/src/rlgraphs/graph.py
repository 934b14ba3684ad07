"""Immutable simple graphs stored as packed adjacency bit rows.

Bit ``v`` of row ``u`` lives in byte ``v // 8`` at position ``v % 8``
(little bit order), so a row converts to a Python ``int`` bitset with
``int.from_bytes(row, "little")``.
"""

from __future__ import annotations

import math
import os
import warnings
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidParameter,
    InvalidParameterWarning,
    LoopEdge,
    Overflow,
    SameVertex,
    SizeMismatch,
)

DEFAULT_MAX_ORDER = 20000
MAX_ORDER_ENV = "RLGRAPHS_MAX_ORDER"

_max_order_override: int | None = None


def max_order() -> int:
    """Largest graph order constructors will build."""
    if _max_order_override is not None:
        return _max_order_override
    raw = os.environ.get(MAX_ORDER_ENV)
    if raw:
        return int(raw)
    return DEFAULT_MAX_ORDER


def set_max_order(value: int | None) -> None:
    """Override the maximum order for this process; ``None`` restores the default."""
    global _max_order_override
    _max_order_override = value


def check_order(n: int) -> None:
    if n > max_order():
        raise Overflow(f"order {n} exceeds the configured maximum {max_order()}")


VertexSet = tuple[int, ...]
Permutation = tuple[int, ...]


def vertex_set(members: Iterable[int], n: int) -> VertexSet:
    """Validate and normalise ``members`` into a sorted duplicate-free tuple."""
    out = tuple(sorted(set(int(v) for v in members)))
    for v in out:
        if v < 0 or v >= n:
            raise IndexOutOfRange(f"vertex {v} not in [0, {n})")
    return out


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances are immutable; the packed bit matrix is read-only. Use
    :func:`from_edge_list` or :meth:`from_matrix` to build one.
    """

    __slots__ = ("n", "_bits", "__dict__")

    def __init__(self, n: int, bits: np.ndarray):
        bits = np.ascontiguousarray(bits, dtype=np.uint8)
        if bits.shape != (n, (n + 7) // 8):
            raise SizeMismatch(f"packed rows have shape {bits.shape}, expected {(n, (n + 7) // 8)}")
        bits.flags.writeable = False
        self.n = n
        self._bits = bits
        self._check()

    @classmethod
    def from_matrix(cls, adj: np.ndarray) -> "Graph":
        adj = np.asarray(adj).astype(bool, copy=False)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise SizeMismatch(f"adjacency matrix must be square, got {adj.shape}")
        n = adj.shape[0]
        if n == 0:
            return cls(0, np.zeros((0, 0), dtype=np.uint8))
        return cls(n, np.packbits(adj, axis=1, bitorder="little"))

    def _check(self) -> None:
        n = self.n
        if n == 0:
            return
        dense = self.dense()
        if dense.diagonal().any():
            raise LoopEdge("adjacency matrix has a loop")
        if not np.array_equal(dense, dense.T):
            raise ValueError("adjacency matrix is not symmetric")
        if n % 8:
            pad = np.uint8((0xFF << (n % 8)) & 0xFF)
            if (self._bits[:, -1] & pad).any():
                raise ValueError("bits set beyond column n-1")

    @property
    def packed(self) -> np.ndarray:
        return self._bits

    def dense(self, dtype=bool) -> np.ndarray:
        """Unpacked ``n x n`` adjacency matrix (a fresh array)."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=dtype)
        out = np.unpackbits(self._bits, axis=1, count=self.n, bitorder="little")
        return out.astype(dtype, copy=False)

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """Adjacency rows as Python int bitsets."""
        return tuple(int.from_bytes(r.tobytes(), "little") for r in self._bits)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.bitwise_count(self._bits).sum(axis=1, dtype=np.int64)
        d.flags.writeable = False
        return d

    @property
    def e(self) -> int:
        return int(self.degrees.sum()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        _check_vertex(self, u)
        _check_vertex(self, v)
        return bool((self._bits[u, v >> 3] >> (v & 7)) & 1)

    def neighbours(self, u: int) -> list[int]:
        _check_vertex(self, u)
        return np.flatnonzero(self.dense_row(u)).tolist()

    def dense_row(self, u: int) -> np.ndarray:
        return np.unpackbits(self._bits[u], count=self.n, bitorder="little").astype(bool)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        iu, iv = np.nonzero(np.triu(self.dense(), 1))
        return zip(iu.tolist(), iv.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((self.n, self._bits.tobytes()))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e})"


def _check_vertex(G: Graph, u: int) -> None:
    if not 0 <= u < G.n:
        raise IndexOutOfRange(f"vertex {u} not in [0, {G.n})")


def empty_graph(n: int) -> Graph:
    check_order(n)
    return Graph(n, np.zeros((n, (n + 7) // 8), dtype=np.uint8))


def complete_graph(n: int) -> Graph:
    check_order(n)
    return Graph.from_matrix(~np.eye(n, dtype=bool))


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph on ``n`` vertices with the given edges; duplicates are ignored."""
    check_order(n)
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        adj[u, v] = adj[v, u] = True
    return Graph.from_matrix(adj)


def complement(G: Graph) -> Graph:
    adj = ~G.dense()
    np.fill_diagonal(adj, False)
    return Graph.from_matrix(adj)


def induced(G: Graph, S: Iterable[int]) -> Graph:
    """Subgraph induced on ``S``, relabelled by the sorted order of ``S``."""
    members = np.array(vertex_set(S, G.n), dtype=np.intp)
    return Graph.from_matrix(G.dense()[np.ix_(members, members)])


def degree(G: Graph, u: int) -> int:
    _check_vertex(G, u)
    return int(G.degrees[u])


def _pair(G: Graph, u: int, v: int) -> tuple[int, int]:
    _check_vertex(G, u)
    _check_vertex(G, v)
    if u == v:
        raise SameVertex(f"binary query needs distinct vertices, got {u} twice")
    rows = G.rows
    return rows[u], rows[v]


def codegree(G: Graph, u: int, v: int) -> int:
    """Number of common neighbours of ``u`` and ``v``."""
    ru, rv = _pair(G, u, v)
    return (ru & rv).bit_count()


def codegree_minus(G: Graph, u: int, v: int) -> int:
    """Size of ``N(u) \\ N(v)``; counts ``v`` itself when ``u ~ v``."""
    ru, rv = _pair(G, u, v)
    return (ru & ~rv).bit_count()


def blow_up(G: Graph, t: int) -> Graph:
    """Replace every vertex ``u`` by clones ``u*t .. u*t + t - 1``."""
    if t < 1:
        raise InvalidParameter(f"blow-up multiplicity must be >= 1, got {t}")
    check_order(G.n * t)
    return Graph.from_matrix(np.kron(G.dense(np.uint8), np.ones((t, t), dtype=np.uint8)))


class QuadraticSurd:
    """Exact real number ``a + b*sqrt(c)`` with rational ``a, b`` and integer ``c >= 0``."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = int(c)
        if self.c < 0:
            raise InvalidParameter("surd radicand must be nonnegative")

    def sign_minus(self, q: Fraction) -> int:
        """Sign of ``self - q``, computed exactly."""
        x = Fraction(q) - self.a  # compare b*sqrt(c) with x
        if self.b == 0 or self.c == 0:
            return (x < 0) - (x > 0)
        lhs_sq = self.b * self.b * self.c
        if self.b > 0:
            if x < 0:
                return 1
            return (lhs_sq > x * x) - (lhs_sq < x * x)
        if x >= 0:
            return -1
        return (x * x > lhs_sq) - (x * x < lhs_sq)

    def to_decimal(self, digits: int = 40) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 5
            a = Decimal(self.a.numerator) / Decimal(self.a.denominator)
            b = Decimal(self.b.numerator) / Decimal(self.b.denominator)
            val = a + b * Decimal(self.c).sqrt()
            ctx.prec = digits
            return +val

    def __float__(self) -> float:
        return float(self.to_decimal(30))

    def __repr__(self) -> str:
        return f"QuadraticSurd({self.a}, {self.b}, {self.c})"

    def __str__(self) -> str:
        if (self.a, self.b, self.c) == (6, 2, 3):
            return "6+2*sqrt(3)"
        return f"{self.a}+{self.b}*sqrt({self.c})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadraticSurd):
            return (self.a, self.b, self.c) == (other.a, other.b, other.c)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))


OPTIMAL_R = QuadraticSurd(6, 2, 3)
"""The circulant parameter ``6 + 2*sqrt(3)`` at which ``p1 + p3 -> 1/2``."""

OPTIMAL_R_DECIMAL = OPTIMAL_R.to_decimal(40)

Real = Union[int, float, Fraction, QuadraticSurd]


def parse_real(text: str | Real) -> Real:
    """Parse ``"4.0"``, ``"19/2"``, ``"opt"`` or ``"6+2*sqrt(3)"`` into an exact real."""
    if not isinstance(text, str):
        return text
    key = text.strip().lower().replace(" ", "")
    if key in {"opt", "optimal", "6+2*sqrt(3)", "2*sqrt(3)+6", "6+2sqrt3", "2sqrt3+6"}:
        return OPTIMAL_R
    return Fraction(key)


def as_fraction(x: float | int | str | Fraction) -> Fraction:
    """Exact value of a user-supplied tolerance; floats are read by their shortest decimal form."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _r_sign_minus(r: Real, q: Fraction) -> int:
    if isinstance(r, QuadraticSurd):
        return r.sign_minus(q)
    diff = Fraction(r) - q
    return (diff > 0) - (diff < 0)


def circulant_threshold(k: int, r: Real) -> int:
    """Largest cyclic distance ``t`` with ``t <= k/r``; edges join distances ``> t``.

    ``t`` comes from a float estimate corrected by exact comparisons
    ``d > k/r  <=>  r > k/d``.
    """
    rf = float(r)
    t = max(0, math.floor(k / rf)) if rf > 0 else k
    t = min(t, k)

    def close(d: int) -> bool:  # d <= k/r
        return d == 0 or _r_sign_minus(r, Fraction(k, d)) <= 0

    while t < k and close(t + 1):
        t += 1
    while t > 0 and not close(t):
        t -= 1
    return t


def circulant(k: int, r: Real) -> Graph:
    """Vertices ``0..k-1``; ``i ~ j`` iff their cyclic distance exceeds ``k/r``.

    A distance equal to ``k/r`` is a non-edge.
    """
    if k < 1:
        raise InvalidParameter(f"circulant order must be >= 1, got {k}")
    r = parse_real(r)
    if float(r) <= 2:
        warnings.warn(f"circulant parameter r={r} <= 2", InvalidParameterWarning, stacklevel=2)
    check_order(k)
    t = circulant_threshold(k, r)
    idx = np.arange(k)
    diff = (idx[None, :] - idx[:, None]) % k
    dist = np.minimum(diff, k - diff)
    return Graph.from_matrix(dist > t)


def check_isomorphism_witness(G: Graph, p: Sequence[int], to_complement: bool = False) -> bool:
    """True iff ``u ~ v`` in ``G`` exactly when ``p(u) ~ p(v)`` in the target.

    The target is ``G`` itself, or its complement when ``to_complement`` is set.
    """
    if len(p) != G.n:
        raise SizeMismatch(f"permutation has length {len(p)}, graph has order {G.n}")
    perm = np.asarray(p, dtype=np.intp)
    if G.n and (perm.min() < 0 or perm.max() >= G.n or len(np.unique(perm)) != G.n):
        raise InvalidParameter("not a permutation of the vertex set")
    A = G.dense()
    target = A[np.ix_(perm, perm)]
    if to_complement:
        target = ~target
        np.fill_diagonal(target, False)
    return bool(np.array_equal(A, target))
