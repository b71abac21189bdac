"""p-maximal orders (Round 2) and the splitting of p in them.

An order is kept as a lower-triangular Z-basis of rational vectors in the
power basis 1, t, ..., t^(n-1) of Q[t]/(f).  Round 2 replaces O by the
multiplier ring of its p-radical until the ring stops growing.  In the
p-maximal order, O/pO is a product of local algebras O/P_i^e_i, each of
dimension e_i f_i over F_p; we split it with idempotents taken from the
Frobenius-fixed subalgebra and read e_i, f_i off each local piece.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import modp

MAX_ROUNDS = 64


# linear algebra over F_p

def left_kernel(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {y : sum_i y_i rows[i] = 0 mod p}."""
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    aug = [[x % p for x in r] + [int(i == k) for k in range(m)] for i, r in enumerate(rows)]
    piv_row = 0
    for c in range(width):
        sel = next((r for r in range(piv_row, m) if aug[r][c]), None)
        if sel is None:
            continue
        aug[piv_row], aug[sel] = aug[sel], aug[piv_row]
        inv = pow(aug[piv_row][c], -1, p)
        aug[piv_row] = [x * inv % p for x in aug[piv_row]]
        for r in range(m):
            if r != piv_row and aug[r][c]:
                k = aug[r][c]
                aug[r] = [(x - k * y) % p for x, y in zip(aug[r], aug[piv_row])]
        piv_row += 1
        if piv_row == m:
            break
    return [r[width:] for r in aug[piv_row:]]


def _combine(coeffs: Sequence[int], vecs: Sequence[Sequence[int]], p: int) -> list[int]:
    out = [0] * len(vecs[0])
    for c, v in zip(coeffs, vecs):
        if c:
            for k, x in enumerate(v):
                out[k] += c * x
    return [x % p for x in out]


# integer Hermite normal form

def hnf_rows(gens: Sequence[Sequence[int]], n: int, modulus: int) -> list[list[int]]:
    """Lower-triangular basis (row c has pivot in column c) of the lattice
    spanned by ``gens`` together with modulus * Z^n."""
    pivots: list[list[int] | None] = [None] * n
    rest = [list(g) for g in gens]
    for c in range(n - 1, -1, -1):
        # earlier columns are already cleared; modulus * e_c is always available
        rest = [[x % modulus for x in r[:c + 1]] + [0] * (n - c - 1) for r in rest]
        active = [r for r in rest if r[c]] + [[modulus * int(j == c) for j in range(n)]]
        others = [r for r in rest if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[c] // piv[c]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[c] else others).append(r)
            active = nxt
        if not active:
            raise ValueError("lattice is not of full rank")
        piv = active[0]
        if piv[c] < 0:
            piv = [-x for x in piv]
        pivots[c] = piv
        rest = others
    for c in range(n - 1, -1, -1):
        pc = pivots[c]
        for c2 in range(c + 1, n):
            r = pivots[c2]
            q = r[c] // pc[c]
            if q:
                pivots[c2] = [a - q * b for a, b in zip(r, pc)]
    return pivots  # type: ignore[return-value]


class Order:
    """Z-order in Q[t]/(f), f monic."""

    def __init__(self, f: Sequence[int], basis: Sequence[Sequence[Fraction]]):
        self.f = list(f)
        self.n = len(f) - 1
        self.basis = [[Fraction(x) for x in b] for b in basis]
        self._xpow = _power_reductions(self.f)

    @classmethod
    def equation_order(cls, f: Sequence[int]) -> "Order":
        n = len(f) - 1
        return cls(f, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def from_generators(cls, f, gens: Sequence[Sequence[Fraction]], modulus: int) -> "Order":
        n = len(f) - 1
        D = lcm(*(Fraction(x).denominator for g in gens for x in g))
        ints = [[int(Fraction(x) * D) for x in g] for g in gens]
        rows = hnf_rows(ints, n, modulus * D)
        return cls(f, [[Fraction(x, D) for x in r] for r in rows])

    def index_denominator(self) -> Fraction:
        """[O : Z[t]] as 1 / prod(diagonal)."""
        d = Fraction(1)
        for k in range(self.n):
            d *= self.basis[k][k]
        return 1 / d

    def mul(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        prod[i + j] += a * b
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            if prod[k]:
                for j, c in enumerate(self._xpow[k]):
                    out[j] += prod[k] * c
        return out

    def coords(self, w: Sequence[Fraction]) -> list[Fraction]:
        w = list(w)
        x = [Fraction(0)] * self.n
        for k in range(self.n - 1, -1, -1):
            if w[k]:
                c = w[k] / self.basis[k][k]
                x[k] = c
                b = self.basis[k]
                for j in range(k + 1):
                    w[j] -= c * b[j]
        return x

    def int_coords(self, w) -> list[int]:
        out = []
        for c in self.coords(w):
            if c.denominator != 1:
                raise ValueError("element is not in the order")
            out.append(c.numerator)
        return out

    def element(self, coords: Sequence[int]) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        for c, b in zip(coords, self.basis):
            if c:
                for j in range(self.n):
                    out[j] += c * b[j]
        return out

    def structure_constants(self, p: int) -> list[list[list[int]]]:
        n = self.n
        C = [[None] * n for _ in range(n)]
        for k in range(n):
            for l in range(k, n):
                v = [x % p for x in self.int_coords(self.mul(self.basis[k], self.basis[l]))]
                C[k][l] = C[l][k] = v
        return C  # type: ignore[return-value]


def _power_reductions(f: Sequence[int]) -> dict[int, list[int]]:
    n = len(f) - 1
    out = {}
    cur = [0] * n
    if n:
        cur = [-c for c in f[:n]]  # t^n
    for k in range(n, 2 * n - 1):
        out[k] = cur
        # multiply by t
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [a - top * c for a, c in zip(cur, f[:n])]
    return out


class _Algebra:
    """O/pO through structure constants."""

    def __init__(self, C, p: int, n: int):
        self.C, self.p, self.n = C, p, n

    def mul(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        out = [0] * self.n
        C = self.C
        for k, a in enumerate(x):
            if a:
                for l, b in enumerate(y):
                    if b:
                        ab = a * b
                        for m, c in enumerate(C[k][l]):
                            if c:
                                out[m] += ab * c
        return [v % self.p for v in out]

    def power(self, x: Sequence[int], e: int, one: Sequence[int]) -> list[int]:
        result, base = list(one), list(x)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius_matrix(self, q: int, one) -> list[list[int]]:
        unit = [[int(i == k) for k in range(self.n)] for i in range(self.n)]
        return [self.power(u, q, one) for u in unit]

    def apply(self, M, v) -> list[int]:
        return _combine(v, M, self.p)


def _radical_exponent(p: int, n: int) -> int:
    q = p
    while q < n:
        q *= p
    return q


def p_radical(O: Order, p: int) -> Order:
    n = O.n
    A = _Algebra(O.structure_constants(p), p, n)
    one = [x % p for x in O.int_coords([Fraction(int(j == 0)) for j in range(n)])]
    F = A.frobenius_matrix(_radical_exponent(p, n), one)
    ker = left_kernel(F, p)
    gens = [O.element(y) for y in ker] + [[p * x for x in b] for b in O.basis]
    return Order.from_generators(O.f, gens, p)


def multiplier_ring(O: Order, I: Order, p: int) -> Order:
    """{x : x I in I}, computed as (1/p){x in O : x I in p I}."""
    n = O.n
    rows = []
    for b in O.basis:
        row = []
        for c in I.basis:
            row.extend(x % p for x in I.int_coords(O.mul(b, c)))
        rows.append(row)
    ker = left_kernel(rows, p)
    gens = [O.element(y) for y in ker] + [[p * x for x in b] for b in O.basis]
    gens = [[x / p for x in g] for g in gens]
    return Order.from_generators(O.f, gens, 1)


def p_maximal_order(f: Sequence[int], p: int) -> Order:
    O = Order.equation_order(f)
    for _ in range(MAX_ROUNDS):
        I = p_radical(O, p)
        O2 = multiplier_ring(O, I, p)
        if O2.index_denominator() == O.index_denominator():
            return O
        O = O2
    raise RuntimeError("Round 2 did not stabilize")


def local_pieces(O: Order, p: int) -> list[tuple[int, int]]:
    """(e_i, f_i) for the primes above p, given a p-maximal order O."""
    n = O.n
    A = _Algebra(O.structure_constants(p), p, n)
    one = [x % p for x in O.int_coords([Fraction(int(j == 0)) for j in range(n)])]
    frob = A.frobenius_matrix(p, one)
    rad_map = A.frobenius_matrix(_radical_exponent(p, n), one)
    out: list[tuple[int, int]] = []

    def split(V: list[list[int]]):
        fixed_rel = [[(a - b) % p for a, b in zip(A.apply(frob, v), v)] for v in V]
        fixed = [_combine(y, V, p) for y in left_kernel(fixed_rel, p)]
        if len(fixed) <= 1:
            rad = len(left_kernel([A.apply(rad_map, v) for v in V], p))
            f_deg = len(V) - rad
            out.append((len(V) // f_deg, f_deg))
            return
        for x in fixed:
            powers = [x]
            while True:
                ker = left_kernel(powers, p)
                if ker:
                    break
                powers.append(A.mul(powers[-1], x))
            h = [0] + ker[0]
            subs = []
            for lam in modp.roots(h, p):
                rel = [[(a - lam * b) % p for a, b in zip(A.mul(x, v), v)] for v in V]
                sub = [_combine(y, V, p) for y in left_kernel(rel, p)]
                if sub:
                    subs.append(sub)
            if len(subs) < 2:
                continue
            for sub in subs:
                split(sub)
            return
        raise RuntimeError("no splitting idempotent found")

    split([[int(i == k) for k in range(n)] for i in range(n)])
    return sorted(out)
