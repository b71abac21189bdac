"""Rank, automorphisms, tame decomposition configurations and the known
obstruction predicates."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import prod
from typing import Optional, Sequence

from ..errors import InvalidInput, ResourceLimit, UnsupportedScope
from .group import FiniteGroup, Subgroup

AUT_MAX_ORDER = 200


# abelian invariants and rank

def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(A: FiniteGroup) -> list[int]:
    """Invariant factors d_1 | d_2 | ... of an abelian group (empty if trivial).

    For each prime p the counts |A[p^k]| of elements killed by p^k give the
    number of cyclic p-power factors of each exponent.
    """
    if not A.is_abelian():
        raise InvalidInput("abelian_invariants needs an abelian group")
    exps: dict[int, list[int]] = {}
    for p in _prime_factors(A.order):
        sizes = [1]
        k = 1
        while True:
            pk = p**k
            sizes.append(sum(1 for x in range(A.order) if A.orders[x] and pk % A.orders[x] == 0))
            if sizes[-1] == sizes[-2]:
                sizes.pop()
                break
            k += 1
        # r_k = number of cyclic factors of order >= p^k
        r = []
        for k in range(1, len(sizes)):
            ratio, c = sizes[k] // sizes[k - 1], 0
            while ratio > 1:
                ratio //= p
                c += 1
            r.append(c)
        r.append(0)
        parts = []
        for k in range(1, len(r)):
            parts += [k] * (r[k - 1] - r[k])
        exps[p] = sorted(parts, reverse=True)
    t = max((len(v) for v in exps.values()), default=0)
    out = []
    for i in range(t):
        out.append(prod(p ** v[i] for p, v in exps.items() if i < len(v)))
    return sorted(out)


def abelianization(G: FiniteGroup) -> tuple[FiniteGroup, list[int]]:
    return G.quotient(G.commutator_subgroup())


def rank(G: FiniteGroup) -> int:
    """Minimal number of elements whose conjugates generate G.

    Read off as the number of invariant factors of G/[G,G]; a nontrivial
    perfect group still needs one generator.
    """
    if "rank" not in G.cache:
        A, _ = abelianization(G)
        d = len(abelian_invariants(A))
        G.cache["rank"] = max(d, 1) if G.order > 1 else 0
    return G.cache["rank"]


def rank_by_search(G: FiniteGroup, limit: int = 4) -> int:
    """Rank by direct search over conjugacy-class representatives."""
    whole = G.whole()
    reps = G.class_representatives()
    for k in range(limit + 1):
        for combo in combinations(reps, k):
            if G.normal_closure(combo) == whole:
                return k
    raise ResourceLimit(f"no normally generating set of size <= {limit}")


# automorphisms

def _generating_tuple(G: FiniteGroup) -> tuple[int, ...]:
    """A generating tuple minimizing the number of candidate images."""
    if G.order == 1:
        return ()
    count: dict[int, int] = {}
    for o in G.orders:
        count[o] = count.get(o, 0) + 1
    cost = lambda xs: prod(count[G.orders[x]] for x in xs)  # noqa: E731
    reps = G.class_representatives()
    others = sorted(range(G.order), key=lambda x: (count[G.orders[x]], x))
    for k in range(1, 4):
        best = None
        for first in reps:
            for rest in combinations(others, k - 1):
                tup = (first,) + rest
                if best is not None and cost(tup) >= cost(best):
                    continue
                if len(G.generate(tup)) == G.order:
                    best = tup
        if best is not None:
            return best
    raise ResourceLimit("no generating tuple of size <= 3")


def automorphisms(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms as index permutations, identity first."""
    if "auts" in G.cache:
        return G.cache["auts"]
    if G.order > AUT_MAX_ORDER:
        raise ResourceLimit(f"automorphisms limited to order <= {AUT_MAX_ORDER}")
    gens = _generating_tuple(G)
    t = G.table
    # spanning tree: element -> (parent, generator position), in BFS order
    tree = []
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    tree.append((y, x, k))
                    nxt.append(y)
        frontier = nxt
    cands = [[y for y in range(G.order) if G.orders[y] == G.orders[g]] for g in gens]
    auts = []
    n = G.order
    for imgs in product(*cands):
        phi = [-1] * n
        phi[G.identity] = G.identity
        for y, x, k in tree:
            phi[y] = t[phi[x]][imgs[k]]
        if len(set(phi)) != n:
            continue
        if all(phi[t[x][g]] == t[phi[x]][imgs[k]] for x in range(n) for k, g in enumerate(gens)):
            auts.append(tuple(phi))
    ident = tuple(range(n))
    auts.sort(key=lambda a: (a != ident, a))
    G.cache["auts"] = auts
    return auts


# configurations

@dataclass(frozen=True, eq=False)
class TameConfig:
    """Group plus inertia subgroups T_i and decomposition subgroups Z_i."""

    group: FiniteGroup
    T: tuple[Subgroup, ...]
    Z: tuple[Subgroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(self.T))
        object.__setattr__(self, "Z", tuple(self.Z))
        problems = self.problems()
        if problems:
            raise InvalidInput("invalid configuration: " + "; ".join(problems))

    def problems(self) -> list[str]:
        G = self.group
        out = []
        if len(self.T) != len(self.Z):
            return ["T and Z lists differ in length"]
        for i, (T, Z) in enumerate(zip(self.T, self.Z), 1):
            if not T.is_cyclic():
                out.append(f"T_{i} is not cyclic")
            if not T.is_normal_in(Z):
                out.append(f"T_{i} is not normal in Z_{i}")
            elif not any(len(G.generate(T.elements + (z,))) == Z.order for z in Z.elements):
                out.append(f"Z_{i}/T_{i} is not cyclic")
        gen = G.normal_closure([x for T in self.T for x in T.elements])
        if gen.order != G.order:
            out.append("the T_i do not normally generate the group")
        if len(self.T) != rank(G):
            out.append(f"{len(self.T)} pairs but the group has rank {rank(G)}")
        return out

    @property
    def s(self) -> int:
        return len(self.T)

    def is_split(self) -> bool:
        return all(T == Z for T, Z in zip(self.T, self.Z))

    def key(self) -> tuple:
        return tuple(sorted((T.elements, Z.elements) for T, Z in zip(self.T, self.Z)))

    def apply(self, phi: Sequence[int]) -> "TameConfig":
        return TameConfig(self.group, tuple(T.image(phi) for T in self.T), tuple(Z.image(phi) for Z in self.Z))

    def describe(self) -> list[dict]:
        return [{"T": T.generators_text(), "Z": Z.generators_text()} for T, Z in zip(self.T, self.Z)]

    def __eq__(self, other):
        return isinstance(other, TameConfig) and self.group is other.group and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def canonical_key(cfg: TameConfig) -> tuple:
    """Least encoding over automorphisms and reordering of the pairs."""
    pairs = list(zip(cfg.T, cfg.Z))
    best = None
    for phi in automorphisms(cfg.group):
        k = tuple(sorted((tuple(sorted(phi[x] for x in T.elements)), tuple(sorted(phi[x] for x in Z.elements)))
                         for T, Z in pairs))
        if best is None or k < best:
            best = k
    return best


def equivalent(a: TameConfig, b: TameConfig) -> bool:
    return a.group is b.group and canonical_key(a) == canonical_key(b)


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    found = {G.generate([x]) for x in range(G.order)}
    return [Subgroup(G, e) for e in sorted(found, key=lambda e: (len(e), e))]


def _decomposition_choices(G: FiniteGroup, T: Subgroup) -> list[Subgroup]:
    norm = [g for g in range(G.order) if all(G.conj(x, g) in T for x in T.elements)]
    found = {G.generate(T.elements + (z,)) for z in norm}
    return [Subgroup(G, e) for e in sorted(found, key=lambda e: (len(e), e))]


def enumerate_configs(G: FiniteGroup) -> list[TameConfig]:
    """All tame decomposition configurations of G up to automorphisms and
    reordering, each given by its least encoding."""
    s = rank(G)
    if s > 2:
        raise UnsupportedScope("configuration enumeration is limited to rank <= 2")
    whole = G.whole()
    cyc = cyclic_subgroups(G)
    choices = {T: _decomposition_choices(G, T) for T in cyc}
    raw = []
    if s == 0:
        raw.append(((), ()))
    for Ts in combinations(cyc, s):
        if G.normal_closure([x for T in Ts for x in T.elements]) != whole:
            continue
        for Zs in product(*(choices[T] for T in Ts)):
            raw.append((Ts, Zs))
    keys = set()
    for Ts, Zs in raw:
        cfg = TameConfig(G, Ts, Zs)
        keys.add(canonical_key(cfg))
    out = []
    for key in sorted(keys):
        out.append(TameConfig(G, tuple(Subgroup(G, t) for t, _ in key), tuple(Subgroup(G, z) for _, z in key)))
    return out


def config_quotient(cfg: TameConfig, N: Subgroup) -> Optional[TameConfig]:
    """The image configuration on G/N, or None when the rank drops."""
    G = cfg.group
    if N.group is not G or not N.is_normal():
        raise InvalidInput("config_quotient needs a normal subgroup of the configuration's group")
    Q, proj = G.quotient(N)
    if rank(Q) != rank(G):
        return None
    return TameConfig(Q, tuple(T.image(proj, Q) for T in cfg.T), tuple(Z.image(proj, Q) for Z in cfg.Z))


# obstructions

@dataclass(frozen=True)
class Verdict:
    status: str  # "obstructed" or "no_known_obstruction"
    reason: Optional[str] = None

    @property
    def obstructed(self) -> bool:
        return self.status == "obstructed"


NO_OBSTRUCTION = Verdict("no_known_obstruction")


def is_elementary_abelian_2(G: FiniteGroup) -> bool:
    return G.order > 1 and G.is_abelian() and all(o <= 2 for o in G.orders)


def is_c4xc2(G: FiniteGroup) -> bool:
    return G.order == 8 and G.is_abelian() and abelian_invariants(G) == [2, 4]


def is_q8(G: FiniteGroup) -> bool:
    return G.order == 8 and not G.is_abelian() and sum(1 for o in G.orders if o == 2) == 1


def sign_matrix_of_config(cfg: TameConfig):
    """S_Z for a configuration on an elementary abelian 2-group.

    With x_i the generator of T_i, the Frobenius class of the i-th prime is
    the element of Z_i with i-th coordinate 0; its j-th coordinate a_ij gives
    entry (-1)^a_ij.
    """
    from ..signmatrix import SignMatrix

    G = cfg.group
    if not is_elementary_abelian_2(G):
        raise InvalidInput("sign matrices need an elementary abelian 2-group")
    basis = [next(x for x in T.elements if x != G.identity) for T in cfg.T]
    s = len(basis)
    coord = {}
    for bits in product((0, 1), repeat=s):
        x = G.identity
        for b, g in zip(bits, basis):
            if b:
                x = G.mul(x, g)
        coord[x] = bits
    rows = []
    for i, Z in enumerate(cfg.Z):
        frob = next(coord[z] for z in Z.elements if coord[z][i] == 0 and (Z.order == 2 or z != G.identity))
        rows.append(tuple(0 if j == i else (-1) ** frob[j] for j in range(s)))
    return SignMatrix(tuple(rows))


def _z4z2_obstructed(cfg: TameConfig) -> bool:
    # D is the subgroup of squares; the rule compares "Z_i lies in T_i D" for i = 1, 2
    G = cfg.group
    D = G.subgroup({G.mul(g, g) for g in range(G.order)})
    inside = [Z <= T.join(D) for T, Z in zip(cfg.T, cfg.Z)]
    return inside[0] != inside[1]


def known_obstruction(cfg: TameConfig, _depth: int = 0) -> Verdict:
    """First matching obstruction predicate, else no known obstruction."""
    from ..signmatrix import qr_test

    G = cfg.group
    if is_elementary_abelian_2(G):
        if not qr_test(sign_matrix_of_config(cfg)).is_qr:
            return Verdict("obstructed", "qr-matrix")
    elif is_c4xc2(G):
        if _z4z2_obstructed(cfg):
            return Verdict("obstructed", "z4z2-reciprocity")
    elif is_q8(G):
        if not cfg.is_split():
            return Verdict("obstructed", "q8-witt")
    for N in G.normal_subgroups():
        if N.order in (1, G.order):
            continue
        q = config_quotient(cfg, N)
        if q is None:
            continue
        v = known_obstruction(q, _depth + 1)
        if v.obstructed:
            return Verdict("obstructed", "quotient:" + v.reason.split("quotient:")[-1])
    return NO_OBSTRUCTION
