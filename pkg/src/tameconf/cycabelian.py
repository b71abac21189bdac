"""Tamely ramified abelian fields as subfields of Q(zeta_m), m squarefree.

A field is stored through its Artin character: a finite abelian group A,
a primitive root g_i for each conductor prime l_i and the image gamma_i of
g_i in A.  The character sends a unit a mod m to

    chi(a) = sum_i dlog_{g_i}(a mod l_i) * gamma_i,

its kernel H is the subgroup of (Z/mZ)* fixing the field, and the Galois
group is the image of chi (generated by the gamma_i).  The inertia group at
l_k is <gamma_k>; the Frobenius of an unramified q is chi(q), and at l_k it
is chi of the residue that is q away from l_k and 1 at l_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from .arith import crt, is_prime, power_residue_index, primitive_root, unit_scale_solve
from .errors import InvalidInput, ResourceLimit, UnsupportedScope
from .smallgroup import (
    FiniteGroup,
    Subgroup,
    TameConfig,
    abelian_group,
    coords,
    cyclic_group,
    direct_product,
    from_coords,
)

H_ENUM_LIMIT = 10**6
GENERAL_MAX_ORDER = 64
GENERAL_MAX_RANK = 3


class CyclotomicField:
    """Subfield of Q(zeta_m) with m = l_1 ... l_s (distinct odd primes)."""

    def __init__(self, primes: Sequence[int], group: FiniteGroup, images: Sequence[int],
                 roots: Optional[Sequence[int]] = None):
        primes = tuple(int(p) for p in primes)
        if len(set(primes)) != len(primes):
            raise InvalidInput("conductor primes must be distinct")
        for p in primes:
            if p == 2:
                raise UnsupportedScope("even conductors are not handled")
            if not is_prime(p):
                raise InvalidInput(f"{p} is not prime")
        if len(images) != len(primes):
            raise InvalidInput("one image per prime is required")
        if not group.is_abelian():
            raise InvalidInput("the Galois group of a cyclotomic subfield is abelian")
        roots = tuple(primitive_root(p) for p in primes) if roots is None else tuple(int(g) for g in roots)
        for p, g, img in zip(primes, roots, images):
            if (p - 1) % group.orders[img]:
                raise InvalidInput(f"image order {group.orders[img]} does not divide {p} - 1")
            if any(pow(g, (p - 1) // q, p) == 1 for q in _prime_divisors(p - 1)):
                raise InvalidInput(f"{g} is not a primitive root mod {p}")
        self.primes = primes
        self.group = group
        self.images = tuple(int(x) for x in images)
        self.roots = roots
        self.galois = group.subgroup(self.images)

    def __repr__(self):
        return f"CyclotomicField(m={self.m}, degree={self.degree})"

    @property
    def m(self) -> int:
        return prod(self.primes)

    @property
    def degree(self) -> int:
        return self.galois.order

    def image_order(self, i: int) -> int:
        return self.group.orders[self.images[i]]

    def character(self, a: int) -> int:
        """Image of the unit a mod m in the Galois group."""
        G = self.group
        x = G.identity
        for i, (p, g, img) in enumerate(zip(self.primes, self.roots, self.images)):
            o = G.orders[img]
            if o == 1:
                continue
            if a % p == 0:
                raise InvalidInput(f"{a} is not a unit mod {self.m}")
            x = G.mul(x, G.power(img, power_residue_index(a, p, o, g=g)))
        return x

    def contains(self, a: int) -> bool:
        """True when a mod m lies in H (fixes the field)."""
        return self.character(a) == self.group.identity

    def H_elements(self) -> list[int]:
        if self.m > H_ENUM_LIMIT:
            raise ResourceLimit(f"H is only enumerated for m <= {H_ENUM_LIMIT}")
        return [a for a in range(1, self.m) if gcd(a, self.m) == 1 and self.contains(a)]

    def H_generators(self) -> list[int]:
        """Residues mod m generating H."""
        orders = [self.image_order(i) for i in range(len(self.primes))]
        gens = []
        # multiples of the image order on each factor
        for i, (p, g, o) in enumerate(zip(self.primes, self.roots, orders)):
            if o < p - 1:
                gens.append(self._lift({i: o}))
        # kernel of the reduced map prod Z/o_i -> A
        E = abelian_group(orders)
        kernel = []
        for x in range(E.order):
            v = coords(E, x)
            if self._combine(v) == self.group.identity:
                kernel.append(x)
        for x in Subgroup(E, kernel).generators():
            v = coords(E, x)
            gens.append(self._lift({i: c for i, c in enumerate(v) if c}))
        return sorted(set(gens))

    def _combine(self, exps: Sequence[int]) -> int:
        G = self.group
        x = G.identity
        for img, e in zip(self.images, exps):
            x = G.mul(x, G.power(img, e))
        return x

    def _lift(self, exps: dict[int, int]) -> int:
        residues = [pow(g, exps.get(i, 0), p) for i, (p, g) in enumerate(zip(self.primes, self.roots))]
        return crt(residues, self.primes)[0]

    def ramified_primes(self) -> list[int]:
        return [p for i, p in enumerate(self.primes) if self.images[i] != self.group.identity]

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "primes": list(self.primes),
            "roots": list(self.roots),
            "degree": self.degree,
            "H_generators": self.H_generators(),
        }


def _prime_divisors(n: int) -> list[int]:
    from .arith import factorize

    return list(factorize(n)) if n > 1 else []


def field_K_n_p(p: int, n: int) -> CyclotomicField:
    """The degree-n subfield of Q(zeta_p)."""
    if not is_prime(p) or p == 2:
        raise InvalidInput(f"{p} is not an odd prime")
    if n < 1 or (p - 1) % n:
        raise InvalidInput(f"{n} does not divide {p} - 1")
    return CyclotomicField((p,), cyclic_group(n), (1 % n,))


def _compact(primes, group, images, roots) -> CyclotomicField:
    gal = group.subgroup(images)
    if gal.order == group.order:
        return CyclotomicField(primes, group, images, roots)
    A, embed = group.subgroup_as_group(gal)
    pos = {x: i for i, x in enumerate(embed)}
    return CyclotomicField(primes, A, [pos[x] for x in images], roots)


def composite(F1: CyclotomicField, F2: CyclotomicField) -> CyclotomicField:
    """Compositum of two fields whose conductors are coprime or equal."""
    P1, P2 = set(F1.primes), set(F2.primes)
    G = direct_product(F1.group, F2.group)
    n2 = F2.group.order
    if not P1 & P2:
        images = [x * n2 + F2.group.identity for x in F1.images]
        images += [F1.group.identity * n2 + y for y in F2.images]
        return _compact(F1.primes + F2.primes, G, images, F1.roots + F2.roots)
    if P1 != P2:
        raise UnsupportedScope("conductors overlap without being equal")
    images = []
    for i, p in enumerate(F1.primes):
        j = F2.primes.index(p)
        y = F2.images[j]
        o = F2.group.orders[y]
        if F2.roots[j] != F1.roots[i] and o > 1:
            # re-express F2's character on F1's primitive root
            y = F2.group.power(y, power_residue_index(F1.roots[i], p, o, g=F2.roots[j]))
        images.append(F1.images[i] * n2 + y)
    return _compact(F1.primes, G, images, F1.roots)


def same_subfield(F1: CyclotomicField, F2: CyclotomicField) -> bool:
    """True when both describe the same subfield of Q(zeta_lcm)."""
    primes = sorted(set(F1.primes) | set(F2.primes))

    def lifted(F):
        imgs, roots = [], []
        for p in primes:
            if p in F.primes:
                i = F.primes.index(p)
                imgs.append(F.images[i])
                roots.append(F.roots[i])
            else:
                imgs.append(F.group.identity)
                roots.append(primitive_root(p))
        return CyclotomicField(primes, F.group, imgs, roots)

    L1, L2 = lifted(F1), lifted(F2)
    if L1.degree != L2.degree:
        return False
    both = composite(L1, L2)
    return both.degree == L1.degree


def inertia_group(F: CyclotomicField, p: int) -> Subgroup:
    if p in F.primes:
        return F.group.subgroup([F.images[F.primes.index(p)]])
    return F.group.trivial()


@dataclass(frozen=True)
class DecompositionData:
    prime: int
    e: int
    f: int
    g: int
    T: Subgroup
    Z: Subgroup
    frobenius: int


def frobenius(F: CyclotomicField, q: int) -> int:
    """Frobenius class at q (modulo inertia when q ramifies)."""
    G = F.group
    x = G.identity
    for p, g, img in zip(F.primes, F.roots, F.images):
        o = G.orders[img]
        if p == q or o == 1:
            continue
        x = G.mul(x, G.power(img, power_residue_index(q, p, o, g=g)))
    return x


def decomposition_data(F: CyclotomicField, q: int) -> DecompositionData:
    if not is_prime(q):
        raise InvalidInput(f"{q} is not prime")
    T = inertia_group(F, q)
    fr = frobenius(F, q)
    Z = F.group.subgroup(T.elements + (fr,))
    e, f = T.order, Z.order // T.order
    return DecompositionData(q, e, f, F.degree // Z.order, T, Z, fr)


def extract_config(F: CyclotomicField, prime_order: Sequence[int]) -> TameConfig:
    """Configuration of F with the ramified primes taken in ``prime_order``."""
    if sorted(prime_order) != sorted(F.ramified_primes()) or len(set(prime_order)) != len(prime_order):
        raise InvalidInput(f"ramified primes are {F.ramified_primes()}, not {list(prime_order)}")
    A, embed = F.group.subgroup_as_group(F.galois)
    pos = {x: i for i, x in enumerate(embed)}
    Ts, Zs = [], []
    for q in prime_order:
        d = decomposition_data(F, q)
        Ts.append(Subgroup(A, [pos[x] for x in d.T.elements]))
        Zs.append(Subgroup(A, [pos[x] for x in d.Z.elements]))
    return TameConfig(A, tuple(Ts), tuple(Zs))


def verify_realization(F: CyclotomicField, target: TameConfig) -> Optional[dict]:
    """Isomorphism Gal(F/Q) -> target group carrying each ramified prime's
    (T, Z) onto a target pair, or None."""
    B = target.group
    if not B.is_abelian():
        raise InvalidInput("target group must be abelian")
    if B.order != F.degree:
        return None
    ram = [i for i, img in enumerate(F.images) if img != F.group.identity]
    s = len(ram)
    if s != target.s:
        return None
    A = F.group
    data = [decomposition_data(F, F.primes[i]) for i in ram]
    src = [F.images[i] for i in ram]
    for perm in permutations(range(s)):
        if any(data[k].e != target.T[perm[k]].order for k in range(s)):
            continue
        if any(data[k].Z.order != target.Z[perm[k]].order for k in range(s)):
            continue
        choices = [[y for y in target.T[perm[k]].elements if B.orders[y] == data[k].e] for k in range(s)]
        for imgs in product(*choices):
            phi = _extend(A, src, B, imgs)
            if phi is None:
                continue
            if all(Subgroup(B, [phi[x] for x in data[k].Z.elements]) == target.Z[perm[k]] for k in range(s)):
                return {
                    "assignment": {F.primes[ram[k]]: perm[k] for k in range(s)},
                    "generator_images": {F.primes[ram[k]]: imgs[k] for k in range(s)},
                }
    return None


def _extend(A: FiniteGroup, src: Sequence[int], B: FiniteGroup, imgs: Sequence[int]) -> Optional[dict]:
    """Homomorphism <src> -> B with src[k] -> imgs[k] if it is a well-defined bijection."""
    phi = {A.identity: B.identity}
    frontier = [A.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for a, b in zip(src, imgs):
                y, v = A.mul(x, a), B.mul(phi[x], b)
                if y in phi:
                    if phi[y] != v:
                        return None
                else:
                    phi[y] = v
                    nxt.append(y)
        frontier = nxt
    if len(set(phi.values())) != len(phi) or len(phi) != B.order:
        return None
    return phi


# decomposition matrices and certificates

@dataclass(frozen=True)
class DecompMatrix:
    """s x s matrix over Z/n with zero diagonal; row i holds the Frobenius
    exponents of the i-th prime."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("modulus must be positive")
        rows = tuple(tuple(int(x) % self.n for x in r) for r in self.entries)
        s = len(rows)
        if s < 1 or any(len(r) != s for r in rows):
            raise InvalidInput("decomposition matrix must be square and non-empty")
        if any(rows[i][i] for i in range(s)):
            raise InvalidInput("diagonal entries must be 0")
        object.__setattr__(self, "entries", rows)

    @property
    def s(self) -> int:
        return len(self.entries)

    @classmethod
    def parse(cls, n: int, text: str) -> "DecompMatrix":
        try:
            rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
        except ValueError as exc:
            raise InvalidInput(f"cannot parse matrix {text!r}") from exc
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def zero(cls, n: int, s: int) -> "DecompMatrix":
        return cls(n, tuple(tuple(0 for _ in range(s)) for _ in range(s)))

    def __str__(self):
        return ";".join(",".join(str(x) for x in r) for r in self.entries)


def _unit_field(n: int, primes: Sequence[int], roots: Sequence[int]) -> CyclotomicField:
    s = len(primes)
    G = abelian_group([n] * s)
    images = [from_coords(G, [int(i == k) for i in range(s)]) for k in range(s)]
    return CyclotomicField(primes, G, images, roots)


def matrix_of_primes(n: int, primes: Sequence[int], roots: Optional[Sequence[int]] = None) -> DecompMatrix:
    """a_ij with l_i = g_j^{a_ij} mod l_j, computed directly from residues."""
    roots = roots or [primitive_root(p) for p in primes]
    s = len(primes)
    return DecompMatrix(n, tuple(
        tuple(0 if i == j else power_residue_index(primes[i], primes[j], n, g=roots[j]) for j in range(s))
        for i in range(s)))


@dataclass
class RealizationCertificate:
    kind: str  # "split", "matrix" or "config"
    primes: tuple[int, ...]
    roots: tuple[int, ...]
    field: CyclotomicField
    local: tuple[tuple[int, int, int], ...]  # (prime, e, f)
    n: Optional[int] = None
    matrix: Optional[DecompMatrix] = None
    config: Optional[TameConfig] = None
    witness: Optional[dict] = None

    def verify(self) -> bool:
        """Recompute everything from the primes and roots."""
        F = CyclotomicField(self.primes, self.field.group, self.field.images, self.roots)
        local = tuple((p, d.e, d.f) for p in self.primes for d in [decomposition_data(F, p)])
        if local != tuple(self.local):
            return False
        if self.kind == "split":
            return F.degree == self.n ** len(self.primes) and all(e == self.n and f == 1 for _, e, f in local)
        if self.kind == "matrix":
            direct = matrix_of_primes(self.n, self.primes, self.roots)
            if direct != self.matrix:
                return False
            G = F.group
            engine = tuple(coords(G, frobenius(F, p)) for p in self.primes)
            rows = tuple(tuple(0 if i == j else engine[i][j] for j in range(len(self.primes)))
                         for i in range(len(self.primes)))
            return rows == self.matrix.entries and F.degree == self.n ** len(self.primes)
        if self.kind == "config":
            return verify_realization(F, self.config) is not None
        return False

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "primes": list(self.primes),
            "roots": list(self.roots),
            "field": self.field.to_json(),
            "local": [{"p": p, "e": e, "f": f} for p, e, f in self.local],
        }
        if self.n is not None:
            out["n"] = self.n
        if self.matrix is not None:
            out["matrix"] = str(self.matrix)
        if self.config is not None:
            out["config"] = self.config.describe()
        if self.witness is not None:
            out["witness"] = {k: {str(p): v for p, v in d.items()} for k, d in self.witness.items()}
        return out


def _local_table(F: CyclotomicField) -> tuple[tuple[int, int, int], ...]:
    return tuple((p, d.e, d.f) for p in F.primes for d in [decomposition_data(F, p)])


def _primes_in_progression(modulus: int, bound: int, exclude=()) -> Iterator[int]:
    p = modulus + 1
    while p <= bound:
        if p not in exclude and is_prime(p):
            yield p
        p += modulus


def realize_split(n: int, s: int, bound: int) -> Optional[RealizationCertificate]:
    """Greedy split realization: l_{t+1} is the least prime = 1 mod n l_1..l_t
    modulo which every earlier l_i is an n-th power."""
    if n < 2 or s < 1:
        raise InvalidInput("need n >= 2 and s >= 1")
    primes: list[int] = []
    for _ in range(s):
        modulus = n * prod(primes)
        for p in _primes_in_progression(modulus, bound, primes):
            if p % 2 and all(power_residue_index(l, p, n) == 0 for l in primes):
                primes.append(p)
                break
        else:
            return None
    roots = tuple(primitive_root(p) for p in primes)
    F = _unit_field(n, primes, roots)
    return RealizationCertificate("split", tuple(primes), roots, F, _local_table(F), n=n,
                                  matrix=DecompMatrix.zero(n, s))


def realize_matrix_odd(n: int, M: DecompMatrix, bound: int) -> Optional[RealizationCertificate]:
    """Primes l_1..l_s and primitive roots with l_i = g_j^{M[i][j]} mod l_j.

    Each new prime p must satisfy the row condition against the recorded
    roots exactly; the column condition only has to hold up to a unit u,
    which is then absorbed into the choice of primitive root for p.
    """
    if n % 2 == 0 or n < 3:
        raise InvalidInput("n must be odd and at least 3")
    if M.n != n:
        raise InvalidInput("matrix modulus differs from n")
    s = M.s
    primes: list[int] = []
    roots: list[int] = []
    for t in range(s):
        for p in _primes_in_progression(n, bound, primes):
            if any(power_residue_index(p, primes[i], n, g=roots[i]) != M.entries[t][i] for i in range(t)):
                continue
            b = [power_residue_index(l, p, n) for l in primes]
            u = unit_scale_solve(b, [M.entries[i][t] for i in range(t)], n)
            if u is None:
                continue
            v = pow(u, -1, n)
            while gcd(v, p - 1) != 1:
                v += n
            primes.append(p)
            roots.append(pow(primitive_root(p), v, p))
            break
        else:
            return None
    F = _unit_field(n, primes, roots)
    return RealizationCertificate("matrix", tuple(primes), tuple(roots), F, _local_table(F), n=n, matrix=M)


@dataclass
class SearchResult:
    certificate: Optional[RealizationCertificate]
    tuples_tried: int
    bound: int

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _tuples(steps: Sequence[int], bound: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of distinct odd primes, l_i = 1 mod steps[i], with
    product <= bound, in lexicographic order."""
    s = len(steps)

    def rec(prefix: tuple[int, ...], budget: int):
        i = len(prefix)
        if i == s:
            yield prefix
            return
        # the remaining factors need at least 3 each
        cap = budget // (3 ** (s - i - 1))
        step = steps[i] if steps[i] % 2 == 0 else 2 * steps[i]
        p = step + 1
        while p <= cap:
            if p not in prefix and is_prime(p):
                yield from rec(prefix + (p,), budget // p)
            p += step

    yield from rec((), bound)


def realize_abelian_general(target: TameConfig, bound: int) -> SearchResult:
    """First tuple of primes (lexicographic, conductor l_1...l_s <= bound)
    carrying a field that realizes ``target``; reports tuples tried."""
    G = target.group
    if not G.is_abelian():
        raise InvalidInput("target group must be abelian")
    if G.order > GENERAL_MAX_ORDER or target.s > GENERAL_MAX_RANK:
        raise ResourceLimit(f"general search limited to |G| <= {GENERAL_MAX_ORDER} and rank <= {GENERAL_MAX_RANK}")
    s = target.s
    t_orders = [T.order for T in target.T]
    gens = [[x for x in T.elements if G.orders[x] == T.order] for T in target.T]
    tried = 0
    for primes in _tuples(t_orders, bound):
        tried += 1
        d = [[0 if i == j else power_residue_index(primes[i], primes[j], t_orders[j]) for j in range(s)]
             for i in range(s)]
        for gam in product(*gens):
            ok = True
            for i in range(s):
                fr = G.identity
                for j in range(s):
                    if j != i and d[i][j]:
                        fr = G.mul(fr, G.power(gam[j], d[i][j]))
                if len(G.generate(target.T[i].elements + (fr,))) != target.Z[i].order or fr not in target.Z[i]:
                    ok = False
                    break
            if not ok:
                continue
            roots = tuple(primitive_root(p) for p in primes)
            F = CyclotomicField(primes, G, gam, roots)
            witness = verify_realization(F, target)
            if witness is None:
                continue
            cert = RealizationCertificate("config", tuple(primes), roots, F, _local_table(F),
                                          config=target, witness=witness)
            return SearchResult(cert, tried, bound)
    return SearchResult(None, tried, bound)


# reciprocity

@dataclass(frozen=True)
class ReciprocityInstance:
    n: int
    p: int
    primes: tuple[int, ...]
    zeta: Optional[int] = None  # primitive n-th root of unity mod p

    def __post_init__(self):
        n, p = self.n, self.p
        object.__setattr__(self, "primes", tuple(int(l) for l in self.primes))
        if n < 1 or not is_prime(p) or (p - 1) % n:
            raise InvalidInput("need a prime p = 1 mod n")
        if len(set(self.primes)) != len(self.primes):
            raise InvalidInput("the l_i must be distinct")
        for l in self.primes:
            if l == p or not is_prime(l) or gcd(l, n) != 1:
                raise InvalidInput(f"{l} must be a prime different from p and prime to n")
        z = self.zeta
        if z is None:
            z = pow(primitive_root(p), (p - 1) // n, p)
        z %= p
        if pow(z, n, p) != 1 or any(pow(z, n // q, p) == 1 for q in _prime_divisors(n)):
            raise InvalidInput(f"{z} is not a primitive {n}-th root of unity mod {p}")
        object.__setattr__(self, "zeta", z)

    def kummer_exponents(self) -> tuple[int, ...]:
        """a_i with l_i^((p-1)/n) = zeta^a_i mod p."""
        out = []
        e = (self.p - 1) // self.n
        for l in self.primes:
            x = pow(l, e, self.p)
            cur, k = 1, 0
            while cur != x:
                cur = cur * self.zeta % self.p
                k += 1
                if k > self.n:
                    raise RuntimeError("power residue outside <zeta>")
            out.append(k)
        return tuple(out)

    def cyclotomic_indices(self) -> tuple[int, ...]:
        return tuple(power_residue_index(l, self.p, self.n) for l in self.primes)


def reciprocity_unit(inst: ReciprocityInstance) -> Optional[int]:
    return unit_scale_solve(inst.kummer_exponents(), inst.cyclotomic_indices(), inst.n)


def reciprocity_check(inst: ReciprocityInstance) -> bool:
    """Whether the Kummer exponent vector and the cyclotomic index vector
    differ by a unit mod n."""
    return reciprocity_unit(inst) is not None
