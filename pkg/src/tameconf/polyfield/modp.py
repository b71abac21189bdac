"""Dense polynomials over F_p (lists, constant term first) and their
factorization: squarefree split, distinct-degree, then equal-degree
(Cantor-Zassenhaus, trace map for p = 2)."""
from __future__ import annotations

import hashlib
import random
from typing import Sequence

Poly = list  # coefficients mod p, constant first, no trailing zeros


def trim(a: Sequence[int], p: int) -> Poly:
    out = [x % p for x in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def scale(a: Poly, c: int, p: int) -> Poly:
    return trim([x * c for x in a], p)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def divmod_(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(len(b)):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return trim(q, p), trim(a[:db], p)


def rem(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result, base = [1], rem(a, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result if len(m) > 1 else []


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * a[i] for i in range(1, len(a))], p)


def evaluate(a: Poly, x: int, p: int) -> int:
    r = 0
    for c in reversed(a):
        r = (r * x + c) % p
    return r


def _pth_root(a: Poly, p: int) -> Poly:
    # a is a polynomial in x^p; coefficients are their own p-th roots in F_p
    return [a[i] for i in range(0, len(a), p)]


def squarefree_decomposition(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Monic squarefree g_k with f = lc * prod g_k^k."""
    f = monic(f, p)
    if deg(f) < 1:
        return []
    out: dict[int, Poly] = {}

    def run(a: Poly, mult: int):
        i = 1
        c = gcd(a, derivative(a, p), p)
        w = divmod_(a, c, p)[0]
        while deg(w) > 0:
            y = gcd(w, c, p)
            z = divmod_(w, y, p)[0]
            if deg(z) > 0:
                out[i * mult] = mul(out.get(i * mult, [1]), z, p)
            i += 1
            w, c = y, divmod_(c, y, p)[0]
        if deg(c) > 0:
            run(_pth_root(c, p), mult * p)

    run(f, 1)
    return sorted(((g, k) for k, g in out.items()), key=lambda t: t[1])


def distinct_degree(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Split a monic squarefree f into products of same-degree irreducibles."""
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _seed(f: Poly, p: int) -> int:
    digest = hashlib.sha256(repr((tuple(f), p)).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, cur = list(a), list(a)
            for _ in range(d - 1):
                cur = rem(mul(cur, cur, p), f, p)
                t = add(t, cur, p)
            b = t
        else:
            b = sub(powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = gcd(f, b, p)
        if 0 < deg(g) < n:
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


def _key(g: Poly):
    return (len(g), list(reversed(g)))


def factor_mod_p_list(f: Sequence[int], p: int) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicity, sorted by (degree, coefficients)."""
    f = trim(f, p)
    if not f:
        raise ValueError("zero polynomial")
    rng = random.Random(_seed(f, p))
    out = []
    for g, k in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, k))
    return sorted(out, key=lambda t: (_key(t[0]), t[1]))


def is_irreducible(f: Sequence[int], p: int) -> bool:
    fac = factor_mod_p_list(f, p)
    return len(fac) == 1 and fac[0][1] == 1


def roots(f: Sequence[int], p: int) -> list[int]:
    """Distinct roots in F_p."""
    return sorted((-g[0]) % p for g, _ in factor_mod_p_list(f, p) if len(g) == 2)


def expand(factors: Sequence[tuple[Poly, int]], p: int) -> Poly:
    out = [1]
    for g, k in factors:
        for _ in range(k):
            out = mul(out, g, p)
    return out
