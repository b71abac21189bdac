# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Jacobi symbols, modular powers, baby-step giant-step
and the sign-matrix orbit census.  Interface matches ``_pykernels``."""
from itertools import permutations

import numpy as np

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline u64 _mulmod(u64 a, u64 b, u64 m) nogil:
    return <u64>((<u128>a * <u128>b) % m)


cdef u64 _powmod(u64 a, u64 e, u64 m) nogil:
    cdef u64 r = 1 % m
    a %= m
    while e:
        if e & 1:
            r = _mulmod(r, a, m)
        a = _mulmod(a, a, m)
        e >>= 1
    return r


cdef int _jacobi(u64 a, u64 n) nogil:
    cdef int t = 1
    cdef u64 tmp
    a %= n
    while a:
        while not (a & 1):
            a >>= 1
            if (n & 7) == 3 or (n & 7) == 5:
                t = -t
        tmp = a
        a = n
        n = tmp
        if (a & 3) == 3 and (n & 3) == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def powmod(a, e, m):
    if m >= 2 ** 64 or e < 0 or a < 0:
        return pow(a, e, m)
    return _powmod(a, e, m)


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd positive n."""
    if n >= 2 ** 64:
        from ._pykernels import jacobi as slow
        return slow(a, n)
    return _jacobi(a % n, n)


def legendre_row(a, i64[:] primes):
    """Array of (a/q) for every odd q in ``primes`` (int8)."""
    cdef Py_ssize_t k, n = primes.shape[0]
    out = np.empty(n, dtype=np.int8)
    cdef signed char[:] view = out
    cdef u64 q
    cdef i64 aa = a
    with nogil:
        for k in range(n):
            q = <u64>primes[k]
            if aa >= 0:
                view[k] = _jacobi(<u64>aa % q, q)
            else:
                view[k] = _jacobi(q - (<u64>(-aa) % q), q)
    return out


def bsgs(base, target, modulus, order):
    """Smallest x in [0, order) with base^x == target mod modulus, or -1."""
    if modulus >= 2 ** 63:
        from ._pykernels import bsgs as slow
        return slow(base, target, modulus, order)
    cdef u64 p = modulus
    cdef u64 b = base % p
    cdef u64 t = target % p
    cdef u64 n = order
    cdef u64 m = 1
    while m * m < n:
        m += 1
    vals = np.empty(m, dtype=np.uint64)
    cdef u64[:] v = vals
    cdef u64 cur = 1 % p
    cdef u64 j
    for j in range(m):
        v[j] = cur
        cur = _mulmod(cur, b, p)
    order_idx = np.argsort(vals, kind="stable").astype(np.uint64)
    sorted_vals = vals[order_idx]
    cdef u64[:] sv = sorted_vals
    cdef u64[:] si = order_idx
    cdef u64 step = pow(int(b), -int(m), int(p)) if m else 1
    cdef u64 gamma = t
    cdef u64 i, lo, hi, mid, x
    cdef i64 best = -1
    with nogil:
        for i in range(m + 1):
            lo = 0
            hi = m
            while lo < hi:
                mid = (lo + hi) >> 1
                if sv[mid] < gamma:
                    lo = mid + 1
                else:
                    hi = mid
            if lo < m and sv[lo] == gamma:
                x = i * m + si[lo]
                if x < n:
                    best = <i64>x
                    break
            gamma = _mulmod(gamma, step, p)
    return best


cdef int _is_qr_diag(int* diag, int s) nogil:
    cdef int k, i, big, small, cnt_big, cnt_small
    if s == 1:
        return 1
    for k in range(1, s + 1):
        big = s - 1
        small = s - 2 * k + 1
        cnt_big = 0
        cnt_small = 0
        for i in range(s):
            if diag[i] == big:
                cnt_big += 1
            elif diag[i] == small:
                cnt_small += 1
        if big == small:
            if cnt_big == s:
                return 1
        elif cnt_big == s - k and cnt_small == k:
            return 1
    return 0


def _census_tables(s):
    pos = [(i, j) for i in range(s) for j in range(s) if i != j]
    pos_index = {ij: b for b, ij in enumerate(pos)}
    pm = np.array(
        [[pos_index[(perm[i], perm[j])] for (i, j) in pos] for perm in permutations(range(s))],
        dtype=np.int32,
    ).reshape(-1, max(len(pos), 1))
    pidx = np.zeros((max(s, 1), max(s, 1)), dtype=np.int32)
    for (i, j), b in pos_index.items():
        pidx[i, j] = b
    return len(pos), pm, pidx


def census_orbits(int s):
    """Return (orbit count, QR orbit count) of s x s sign matrices under conjugation.

    A matrix is a bitmask over off-diagonal positions; a set bit is a -1.
    """
    if s < 1 or s > 8:
        raise ValueError("census_orbits supports 1 <= s <= 8")
    nbits_py, pm_arr, pi_arr = _census_tables(s)
    cdef int nbits = nbits_py
    cdef int[:, :] pm = pm_arr
    cdef int[:, :] pidx = pi_arr
    cdef int nperm = pm_arr.shape[0]
    cdef u64 total = (<u64>1) << nbits
    seen_arr = np.zeros(total, dtype=np.uint8)
    cdef unsigned char[:] seen = seen_arr
    cdef u64 x, y
    cdef i64 classes = 0, qr = 0
    cdef int q, b, i, j, d
    cdef int diag[8]
    with nogil:
        for x in range(total):
            if seen[x]:
                continue
            classes += 1
            for i in range(s):
                d = 0
                for j in range(s):
                    if i != j:
                        if ((x >> pidx[i, j]) & 1) ^ ((x >> pidx[j, i]) & 1):
                            d -= 1
                        else:
                            d += 1
                diag[i] = d
            qr += _is_qr_diag(diag, s)
            for q in range(nperm):
                y = 0
                for b in range(nbits):
                    if (x >> b) & 1:
                        y |= (<u64>1) << pm[q, b]
                seen[y] = 1
    return classes, qr
