"""In-place row reduction over GF(p).

The compiled kernel defers the ``% p`` on every row update: entries start in
[0, p) and each elimination step adds at most (p-1)**2, so with p < 2**16 a
64-bit accumulator cannot overflow before the final reduction.  When the
bound fits in 32 bits the caller may pass an int32 array to halve memory
traffic.
"""

from __future__ import annotations

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def _rref_numpy(a: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    rows, cols = a.shape
    pivots = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        col = a[rank:, c] % p
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        pr = rank + int(nz[0])
        if pr != rank:
            a[[rank, pr]] = a[[pr, rank]]
        a[rank, c:] %= p
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank, c:] = a[rank, c:] * inv % p
        f = a[:, c] % p
        f[rank] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[np.ix_(hit, np.arange(c, cols))] = (
                a[np.ix_(hit, np.arange(c, cols))] - np.outer(f[hit], a[rank, c:])
            ) % p
        pivots.append(c)
        rank += 1
    a %= p
    return rank, np.asarray(pivots, dtype=np.int64)


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _axpy(dst, src, g, start):  # pragma: no cover - compiled
        for j in range(start, dst.shape[0]):
            dst[j] += g * src[j]

    @numba.njit(cache=True)
    def _rref_numba(a, p):  # pragma: no cover - compiled
        rows, cols = a.shape
        piv = np.empty(min(rows, cols), dtype=np.int64)
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            pr = -1
            for r in range(rank, rows):
                v = a[r, c] % p
                a[r, c] = v
                if v != 0:
                    pr = r
                    break
            if pr < 0:
                continue
            if pr != rank:
                tmp = a[pr].copy()
                a[pr] = a[rank]
                a[rank] = tmp
            x = np.int64(a[rank, c])
            inv = np.int64(1)
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = inv * x % p
                x = x * x % p
                e >>= 1
            prow = a[rank]
            for j in range(c, cols):
                prow[j] = (np.int64(prow[j]) % p) * inv % p
            for r in range(rows):
                if r == rank:
                    continue
                f = a[r, c] % p
                if f == 0:
                    continue
                _axpy(a[r], prow, p - f, c)
            piv[rank] = c
            rank += 1
        for r in range(rows):
            for j in range(cols):
                a[r, j] %= p
        return rank, piv[:rank]


def rref_inplace(a: np.ndarray, p: int, backend: str = "auto") -> tuple[int, np.ndarray]:
    """Reduce ``a`` (entries already in [0, p)) to RREF in place.

    Returns ``(rank, pivot_columns)``.  ``a`` must be C-contiguous int32 or
    int64; int32 is only safe when ``p + min(a.shape) * (p-1)**2 < 2**31``.
    """
    if a.size == 0:
        return 0, np.zeros(0, dtype=np.int64)
    if backend == "numpy" or (backend == "auto" and not HAVE_NUMBA):
        return _rref_numpy(a, p)
    rank, piv = _rref_numba(a, p)
    return int(rank), piv.copy()


def work_dtype(shape: tuple[int, int], p: int):
    """Narrowest accumulator dtype for which deferred reduction cannot overflow."""
    steps = min(shape) if shape else 0
    if p + steps * (p - 1) ** 2 < 2**31:
        return np.int32
    return np.int64
