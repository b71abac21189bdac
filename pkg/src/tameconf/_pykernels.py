"""Pure-Python implementations of the hot loops.

Mirrors the compiled module ``_kernels`` function for function; selected by
``tameconf.kernels`` when the extension is unavailable.
"""
from itertools import permutations
from math import isqrt

import numpy as np


def powmod(a, e, m):
    return pow(a, e, m)


def jacobi(a, n):
    """Jacobi symbol (a/n) for odd positive n."""
    a %= n
    t = 1
    while a:
        while not a & 1:
            a >>= 1
            if n & 7 in (3, 5):
                t = -t
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def legendre_row(a, primes):
    """Array of (a/q) for every odd q in ``primes`` (int8)."""
    out = np.empty(len(primes), dtype=np.int8)
    for k, q in enumerate(primes.tolist()):
        out[k] = jacobi(a, q)
    return out


def bsgs(base, target, modulus, order):
    """Smallest x in [0, order) with base^x == target mod modulus, or -1."""
    target %= modulus
    m = isqrt(order - 1) + 1 if order > 1 else 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * base % modulus
    step = pow(base, -m, modulus) if m else 1
    gamma = target
    for i in range(m + 1):
        j = table.get(gamma)
        if j is not None:
            x = i * m + j
            if x < order:
                return x
        gamma = gamma * step % modulus
    return -1


def _offdiag_positions(s):
    return [(i, j) for i in range(s) for j in range(s) if i != j]


def _is_qr_mask(mask, s, pos_index):
    diag = []
    for i in range(s):
        d = 0
        for j in range(s):
            if i == j:
                continue
            bij = (mask >> pos_index[i][j]) & 1
            bji = (mask >> pos_index[j][i]) & 1
            d += -1 if bij ^ bji else 1
        diag.append(d)
    diag.sort()
    for k in range(1, s + 1):
        want = sorted([s - 1] * (s - k) + [s - 2 * k + 1] * k)
        if diag == want:
            return True
    return s == 1


def census_orbits(s):
    """Return (orbit count, QR orbit count) of s x s sign matrices under conjugation.

    A matrix is a bitmask over off-diagonal positions; a set bit is a -1.
    """
    pos = _offdiag_positions(s)
    nbits = len(pos)
    pos_index = [[0] * s for _ in range(s)]
    for b, (i, j) in enumerate(pos):
        pos_index[i][j] = b
    maps = []
    for perm in permutations(range(s)):
        maps.append([pos_index[perm[i]][perm[j]] for (i, j) in pos])
    total = 1 << nbits
    seen = bytearray(total)
    classes = qr = 0
    for x in range(total):
        if seen[x]:
            continue
        classes += 1
        if _is_qr_mask(x, s, pos_index):
            qr += 1
        for pm in maps:
            y = 0
            for b in range(nbits):
                if (x >> b) & 1:
                    y |= 1 << pm[b]
            seen[y] = 1
    return classes, qr
