"""Exact modular arithmetic: primality, primitive roots, discrete logarithms,
residue symbols and the unit-scaling solver.

Every function reduces its residue arguments on entry and follows a
smallest-witness convention so callers get reproducible answers.
"""
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional, Sequence

from . import kernels
from .errors import InvalidInput

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
U64 = 1 << 64


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2^64."""
    if n < 0:
        raise InvalidInput("is_prime expects a non-negative integer")
    if n >= U64:
        raise InvalidInput("is_prime is only deterministic below 2^64")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while not d & 1:
        d >>= 1
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    # Brent's variant of Pollard rho; n odd composite.
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = 2
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of 1 <= n < 2^64 as {prime: exponent}."""
    if n < 1:
        raise InvalidInput("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 53
    while p * p <= n and p < 10_000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < p * p or is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _rho(m)
        stack += [d, m // d]
    return dict(sorted(out.items()))


@lru_cache(maxsize=200_000)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/pZ)*."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if p == 2:
        return 1
    qs = [(p - 1) // q for q in factorize(p - 1)]
    g = 2
    while any(pow(g, e, p) == 1 for e in qs):
        g += 1
    return g


def multiplicative_order(a: int, p: int) -> int:
    """Order of a in (Z/pZ)* for prime p."""
    a %= p
    if a == 0:
        raise InvalidInput("zero has no multiplicative order")
    n = p - 1
    for q, k in factorize(p - 1).items():
        for _ in range(k):
            if pow(a, n // q, p) == 1:
                n //= q
            else:
                break
    return n


def _log_prime_power(g: int, a: int, p: int, q: int, k: int, order: int) -> int:
    """log_g a modulo q^k, where g has order ``order`` divisible by q^k."""
    gamma = pow(g, order // q, p)  # order q
    x = 0
    qpow = 1
    for i in range(k):
        # strip the part already found, project onto the order-q subgroup
        h = pow(a * pow(g, -x, p) % p, order // (qpow * q), p)
        d = kernels.bsgs(gamma, h, p, q)
        if d < 0:
            raise InvalidInput("element is not in the subgroup generated by g")
        x += d * qpow
        qpow *= q
    return x


def discrete_log(g: int, a: int, p: int, order: Optional[int] = None) -> int:
    """Exponent b in [0, order) with g^b = a mod p.

    ``order`` defaults to p - 1 (g a primitive root).  Pohlig-Hellman over the
    factorization of the order with baby-step giant-step in each prime
    component, so the cost is O(sqrt(largest prime factor)).
    """
    a %= p
    if a == 0:
        raise InvalidInput("discrete_log of a multiple of p")
    if order is None:
        order = p - 1
    g %= p
    residues, moduli = [], []
    for q, k in factorize(order).items():
        residues.append(_log_prime_power(g, a, p, q, k, order))
        moduli.append(q**k)
    return crt(residues, moduli)[0] if moduli else 0


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    """Chinese remaindering for pairwise coprime moduli -> (x, M)."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        t = (r - x) * pow(m, -1, n) % n
        x += m * t
        m *= n
    return x % m, m


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p < 3 or not p & 1:
        raise InvalidInput("legendre needs an odd prime modulus")
    return kernels.jacobi(a % p, p)


def _root_of_unity_log(x: int, zeta: int, p: int, n: int) -> int:
    if n <= 64:
        cur = 1
        for k in range(n):
            if cur == x:
                return k
            cur = cur * zeta % p
        return -1
    return kernels.bsgs(zeta, x, p, n)


def power_residue_index(l: int, p: int, n: int, g: Optional[int] = None) -> int:
    """b mod n where l = g^b mod p; zero iff l is an n-th power mod p.

    ``g`` defaults to the smallest primitive root of p.
    """
    if n < 1 or (p - 1) % n:
        raise InvalidInput(f"{p} is not 1 mod {n}")
    l %= p
    if l == 0:
        raise InvalidInput(f"{p} divides the argument")
    if n == 1:
        return 0
    if g is None:
        g = primitive_root(p)
    e = (p - 1) // n
    k = _root_of_unity_log(pow(l, e, p), pow(g, e, p), p, n)
    if k < 0:
        raise InvalidInput(f"{g} is not a primitive root mod {p}")
    return k


def star_value(p: int) -> int:
    """(-1)^((p-1)/2) p, the signed prime with Q(sqrt(p*)) inside Q(zeta_p)."""
    if p < 3 or not p & 1:
        raise InvalidInput("star_value needs an odd prime")
    return p if p % 4 == 1 else -p


def unit_scale_solve(a: Sequence[int], b: Sequence[int], n: int) -> Optional[int]:
    """Smallest unit u mod n with u*a_i = b_i mod n for all i, else None."""
    if len(a) != len(b):
        raise InvalidInput("vectors differ in length")
    if n < 1:
        raise InvalidInput("modulus must be positive")
    if n == 1:
        return 0
    a = [x % n for x in a]
    b = [x % n for x in b]
    for u in range(1, n):
        if gcd(u, n) == 1 and all(u * x % n == y for x, y in zip(a, b)):
            return u
    return None


def primes_up_to(limit: int):
    """Sorted numpy array of primes <= limit."""
    import numpy as np

    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for i in range(3, isqrt(limit) + 1, 2):
        if sieve[i]:
            sieve[i * i :: 2 * i] = False
    return np.flatnonzero(sieve).astype(np.int64)
