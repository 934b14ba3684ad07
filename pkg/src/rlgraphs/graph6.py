"""graph6 encoding and decoding.

Format: an order header (one byte ``63+n`` for ``n <= 62``, else ``126``
followed by three or six 6-bit groups), then the upper triangle of the
adjacency matrix in column order ``(0,1), (0,2), (1,2), (0,3), ...``
packed six bits per byte, most significant bit first, each byte offset
by 63.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

from .errors import MalformedGraph6
from .graph import Graph, check_order

HEADER = b">>graph6<<"
_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


def _encode_order(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126] + [63 + ((n >> s) & 63) for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"order {n} too large for graph6")


def _upper_triangle_bits(A: np.ndarray) -> np.ndarray:
    # tril_indices yields (row, col) with row > col in row-major order,
    # i.e. pairs (col, row) in graph6 column order.
    j, i = np.tril_indices(A.shape[0], -1)
    return A[i, j].astype(np.uint8)


def encode(G: Graph) -> bytes:
    """graph6 bytes for ``G`` (no header, no trailing newline)."""
    bits = _upper_triangle_bits(G.dense())
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6) @ _WEIGHTS.astype(np.int64)
    return _encode_order(G.n) + (groups + 63).astype(np.uint8).tobytes()


def decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(HEADER):
        data = data[len(HEADER):]
        base = len(HEADER)
    if not data:
        raise MalformedGraph6("empty graph6 string", base)
    raw = np.frombuffer(data, dtype=np.uint8)
    bad = np.flatnonzero((raw < 63) | (raw > 126))
    if bad.size:
        raise MalformedGraph6(f"byte 0x{raw[bad[0]]:02x} outside the printable range 63..126", base + int(bad[0]))
    vals = raw.astype(np.int64) - 63

    if vals[0] != 63:
        n, pos = int(vals[0]), 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise MalformedGraph6("truncated 8-byte order header", base + len(vals))
        n, pos = 0, 8
        for v in vals[2:8]:
            n = (n << 6) | int(v)
    else:
        if len(vals) < 4:
            raise MalformedGraph6("truncated 4-byte order header", base + len(vals))
        n, pos = 0, 4
        for v in vals[1:4]:
            n = (n << 6) | int(v)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        offset = base + pos + min(len(body), need)
        raise MalformedGraph6(f"expected {need} data bytes for order {n}, found {len(body)}", offset)
    check_order(n)
    bits = ((body[:, None] >> np.arange(5, -1, -1)) & 1).astype(bool).ravel()[:nbits]
    A = np.zeros((n, n), dtype=bool)
    j, i = np.tril_indices(n, -1)
    A[i, j] = bits
    A |= A.T
    return Graph.from_matrix(A)


def iter_lines(stream: Iterable[bytes]) -> Iterator[Graph]:
    """Decode one graph per non-blank line; offsets in errors are per line."""
    for line in stream:
        line = line.strip()
        if line:
            yield decode(line)


def read_file(path: str | Path) -> list[Graph]:
    with open(path, "rb") as fh:
        return list(iter_lines(fh))


def write(graphs: Iterable[Graph], fh: IO[bytes]) -> None:
    for G in graphs:
        fh.write(encode(G) + b"\n")


def write_file(path: str | Path, graphs: Iterable[Graph]) -> None:
    with open(path, "wb") as fh:
        write(graphs, fh)
