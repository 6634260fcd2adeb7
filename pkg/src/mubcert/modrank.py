"""Matrix rank over GF(p) and over the rationals.

The GF(p) routine is the workhorse for full-matrix certificates; the rational
routine (fraction-free Bareiss elimination on Python integers) is the slow,
independent cross-check used at small sizes.
"""

from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

M31 = (1 << 31) - 1
M61 = (1 << 61) - 1

_MODE_GENERIC, _MODE_M31, _MODE_M61 = 0, 1, 2


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _eliminate_py(A: np.ndarray, p: int) -> int:
    """Row elimination on an object array of Python ints, reduced mod p."""
    rows, cols = A.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        col = A[rank:, c] % p
        nz = np.flatnonzero(col)
        if not nz.size:
            continue
        k = rank + int(nz[0])
        if k != rank:
            A[[rank, k]] = A[[k, rank]]
        inv = pow(int(A[rank, c]) % p, -1, p)
        A[rank, c:] = A[rank, c:] * inv % p
        f = A[rank + 1:, c] % p
        A[rank + 1:, c + 1:] = (A[rank + 1:, c + 1:] - np.outer(f, A[rank, c + 1:])) % p
        A[rank + 1:, c] = 0
        rank += 1
    return rank


if numba is not None:

    @numba.njit(inline="always")
    def _reduce(v, p, mode):
        if mode == 1:
            v = (v & p) + (v >> np.uint64(31))
            v = (v & p) + (v >> np.uint64(31))
        elif mode == 2:
            v = (v & p) + (v >> np.uint64(61))
            v = (v & p) + (v >> np.uint64(61))
        else:
            v = v % p
        return v

    @numba.njit(inline="always")
    def _mulmod(a, b, p, mode):
        # operands arrive reduced (possibly one fold above canonical)
        if mode == 2:
            lo31 = np.uint64(0x7FFFFFFF)
            a = a % p
            b = b % p
            a1, a0 = a >> np.uint64(31), a & lo31
            b1, b0 = b >> np.uint64(31), b & lo31
            mid = a1 * b0 + a0 * b1
            t = (np.uint64(2) * (a1 * b1) + (mid >> np.uint64(30))
                 + ((mid & np.uint64(0x3FFFFFFF)) << np.uint64(31)))
            t = _reduce(t, p, mode)
            return _reduce(t + _reduce(a0 * b0, p, mode), p, mode)
        return _reduce(a * b, p, mode)

    @numba.njit(cache=True)
    def _eliminate_jit(A, p, mode):
        rows, cols = A.shape
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            k = -1
            for i in range(rank, rows):
                if A[i, c] % p != 0:
                    k = i
                    break
            if k < 0:
                continue
            if k != rank:
                for j in range(c, cols):
                    t = A[rank, j]
                    A[rank, j] = A[k, j]
                    A[k, j] = t
            # scale the pivot row to a leading 1 (inverse by Fermat)
            base = A[rank, c] % p
            e = p - np.uint64(2)
            inv = np.uint64(1)
            while e:
                if e & np.uint64(1):
                    inv = _mulmod(inv, base, p, mode) % p
                base = _mulmod(base, base, p, mode) % p
                e >>= np.uint64(1)
            for j in range(c, cols):
                A[rank, j] = _mulmod(A[rank, j], inv, p, mode) % p
            for i in range(rank + 1, rows):
                f = A[i, c] % p
                if f == 0:
                    continue
                g = p - f
                for j in range(c + 1, cols):
                    A[i, j] = _reduce(A[i, j] + _mulmod(g, A[rank, j], p, mode), p, mode)
                A[i, c] = 0
            rank += 1
        return rank


def rank_mod_p(matrix, p: int = M31) -> int:
    """Rank of an integer matrix over GF(p), p an odd prime.

    Rank over GF(p) never exceeds rank over Q, so full column rank here
    certifies full column rank over the reals.
    """
    if p <= 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    A = np.asarray(matrix)
    if A.ndim != 2:
        raise ValueError("matrix must be 2-D")
    if A.size == 0:
        return 0
    if numba is not None and p < (1 << 62):
        mode = _MODE_M31 if p == M31 else _MODE_M61 if p == M61 else _MODE_GENERIC
        if mode == _MODE_GENERIC and p >= (1 << 32):
            return _eliminate_py(A.astype(object) % p, p)
        work = np.ascontiguousarray(np.mod(A.astype(object), p).astype(np.uint64))
        return int(_eliminate_jit(work, np.uint64(p), mode))
    return _eliminate_py(A.astype(object) % p, p)


def rank_rational(matrix) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so the divisions by the
    previous pivot are exact and all arithmetic stays in the integers.
    """
    A = np.array(matrix, dtype=object)
    if A.ndim != 2:
        raise ValueError("matrix must be 2-D")
    rows, cols = A.shape
    rank, prev = 0, 1
    for c in range(cols):
        if rank == rows:
            break
        nz = [i for i in range(rank, rows) if A[i, c] != 0]
        if not nz:
            continue
        k = nz[0]
        if k != rank:
            A[[rank, k]] = A[[k, rank]]
        piv = A[rank, c]
        below = A[rank + 1:, c].copy()
        A[rank + 1:, c + 1:] = (piv * A[rank + 1:, c + 1:]
                                - np.outer(below, A[rank, c + 1:])) // prev
        A[rank + 1:, c] = 0
        prev = piv
        rank += 1
    return rank
