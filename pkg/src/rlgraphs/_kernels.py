"""Compiled k-subset scans.

Every scan walks the k-subsets of ``0..n-1`` in lexicographic order and
encodes the induced subgraph on ``s_0 < s_1 < ... < s_{k-1}`` as an
integer whose bit ``j*(j-1)/2 + i`` is set iff ``s_i ~ s_j`` (``i < j``).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def subset_histogram(adj, k):
    """Count k-subsets by subgraph code. ``adj`` is a dense uint8 matrix."""
    n = adj.shape[0]
    hist = np.zeros(1 << (k * (k - 1) // 2), np.int64)
    if k == 0:
        hist[0] = 1
        return hist
    if n < k:
        return hist
    # pat[d, w]: adjacency pattern of w against the first d chosen vertices
    pat = np.zeros((k, n), np.int64)
    idx = np.empty(k, np.int64)
    code = np.zeros(k + 1, np.int64)
    last = k - 1
    loff = last * (last - 1) // 2
    d = 0
    idx[0] = -1
    while d >= 0:
        if d == last:
            base = code[d]
            for v in range(idx[d] + 1, n):
                hist[base | (pat[d, v] << loff)] += 1
            d -= 1
            continue
        idx[d] += 1
        v = idx[d]
        if v > n - k + d:
            d -= 1
            continue
        code[d + 1] = code[d] | (pat[d, v] << (d * (d - 1) // 2))
        for w in range(v + 1, n):
            pat[d + 1, w] = pat[d, w] | (np.int64(adj[v, w]) << d)
        d += 1
        idx[d] = v
    return hist


@njit(cache=True)
def first_witnesses(adj, k, class_of_code, need):
    """First (lexicographically least) k-subset for every class flagged in ``need``.

    Returns an ``(num_classes, k)`` array; rows of classes never met are -1.
    Stops as soon as every needed class has a witness.
    """
    n = adj.shape[0]
    ncls = need.shape[0]
    out = np.full((ncls, k), -1, np.int64)
    remaining = 0
    for c in range(ncls):
        if need[c]:
            remaining += 1
    if remaining == 0 or n < k or k == 0:
        return out
    pat = np.zeros((k, n), np.int64)
    idx = np.empty(k, np.int64)
    code = np.zeros(k + 1, np.int64)
    last = k - 1
    loff = last * (last - 1) // 2
    d = 0
    idx[0] = -1
    while d >= 0:
        if d == last:
            base = code[d]
            for v in range(idx[d] + 1, n):
                cls = class_of_code[base | (pat[d, v] << loff)]
                if need[cls] and out[cls, 0] < 0:
                    for i in range(last):
                        out[cls, i] = idx[i]
                    out[cls, last] = v
                    remaining -= 1
                    if remaining == 0:
                        return out
            d -= 1
            continue
        idx[d] += 1
        v = idx[d]
        if v > n - k + d:
            d -= 1
            continue
        code[d + 1] = code[d] | (pat[d, v] << (d * (d - 1) // 2))
        for w in range(v + 1, n):
            pat[d + 1, w] = pat[d, w] | (np.int64(adj[v, w]) << d)
        d += 1
        idx[d] = v
    return out


def sampled_codes(adj: np.ndarray, k: int, samples: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Codes of random k-subsets (sorted, distinct members) and the subsets themselves."""
    n = adj.shape[0]
    draws = np.sort(rng.integers(0, n, size=(samples, k)), axis=1)
    if k > 1:
        draws = draws[(np.diff(draws, axis=1) > 0).all(axis=1)]
    codes = np.zeros(len(draws), dtype=np.int64)
    for j in range(1, k):
        for i in range(j):
            bit = adj[draws[:, i], draws[:, j]].astype(np.int64)
            codes |= bit << (j * (j - 1) // 2 + i)
    return codes, draws
