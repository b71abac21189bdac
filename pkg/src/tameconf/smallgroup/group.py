"""Finite groups given by a Cayley table.

Elements are integer indices.  Permutation groups keep the permutation of
each element so words can be written in cycle notation.  Permutations are
0-based image tuples and compose right to left: (a*b)(x) = a(b(x)).
"""
from __future__ import annotations

import random
import re
from collections import deque
from typing import Iterable, Optional, Sequence

from ..errors import InvalidInput, ResourceLimit

Perm = tuple[int, ...]
MAX_ORDER = 10_000


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def parse_cycles(text: str, degree: Optional[int] = None) -> Perm:
    """Parse 1-based cycle notation such as "(1 2)(3 4 5)"."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*\d+(?:[\s,]+\d+)*\s*\)|\(\s*\))*", text):
        raise InvalidInput(f"bad cycle notation {text!r}")
    cycles = [[int(x) - 1 for x in re.split(r"[\s,]+", c.strip()) if x]
              for c in re.findall(r"\(([^)]*)\)", text)]
    top = max((x for c in cycles for x in c), default=-1) + 1
    degree = max(degree or 0, top)
    img = list(range(degree))
    seen: set[int] = set()
    for c in cycles:
        if any(x < 0 for x in c) or len(set(c)) != len(c) or seen & set(c):
            raise InvalidInput(f"bad cycle notation {text!r}")
        seen |= set(c)
        for k, x in enumerate(c):
            img[x] = c[(k + 1) % len(c)]
    return tuple(img)


def perm_to_cycles(p: Perm) -> str:
    seen: set[int] = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append("(" + " ".join(str(v + 1) for v in cyc) + ")")
    return "".join(out) or "()"


class FiniteGroup:
    """Group of order N on the indices 0..N-1.

    ``perms`` (optional) holds the permutation realizing each index and
    ``names`` maps generator names to indices for word parsing.
    """

    def __init__(self, table, label: Optional[str] = None, perms=None, names=None, check=True):
        t = [list(map(int, row)) for row in table]
        n = len(t)
        if n == 0 or any(len(r) != n for r in t):
            raise InvalidInput("Cayley table must be square and non-empty")
        self.table = t
        self.order = n
        self.label = label
        self.perms: Optional[list[Perm]] = list(perms) if perms is not None else None
        self._perm_index = {p: i for i, p in enumerate(self.perms)} if self.perms else {}
        ident = [e for e in range(n) if t[e] == list(range(n))]
        if len(ident) != 1:
            raise InvalidInput("table has no identity")
        self.identity = ident[0]
        self.inverse = [0] * n
        for a in range(n):
            row = t[a]
            if sorted(row) != list(range(n)):
                raise InvalidInput("table is not a Latin square")
            self.inverse[a] = row.index(self.identity)
            if t[self.inverse[a]][a] != self.identity:
                raise InvalidInput("left and right inverses differ")
        if check:
            rng = random.Random(n)
            for _ in range(min(500, n**3)):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise InvalidInput("table is not associative")
        self.names: dict[str, int] = dict(names or {})
        self._orders: Optional[list[int]] = None
        self.cache: dict = {}

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    # basic arithmetic
    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        r = self.identity
        while k:
            if k & 1:
                r = self.table[r][a]
            a = self.table[a][a]
            k >>= 1
        return r

    def conj(self, x: int, g: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    @property
    def orders(self) -> list[int]:
        if self._orders is None:
            out = []
            for a in range(self.order):
                k, x = 1, a
                while x != self.identity:
                    x = self.table[x][a]
                    k += 1
                out.append(k)
            self._orders = out
        return self._orders

    def element_order(self, a: int) -> int:
        return self.orders[a]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    # subgroups
    def generate(self, gens: Iterable[int]) -> tuple[int, ...]:
        gens = [g for g in set(gens) if g != self.identity]
        seen = {self.identity}
        queue = deque([self.identity])
        t = self.table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def subgroup(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.generate(gens))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def normal_closure(self, elems: Iterable[int]) -> "Subgroup":
        elems = set(elems)
        conjugates = {self.conj(x, g) for x in elems for g in range(self.order)}
        return self.subgroup(conjugates)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        if "classes" not in self.cache:
            seen: set[int] = set()
            classes = []
            for x in range(self.order):
                if x in seen:
                    continue
                cls = tuple(sorted({self.conj(x, g) for g in range(self.order)}))
                seen.update(cls)
                classes.append(cls)
            self.cache["classes"] = classes
        return self.cache["classes"]

    def class_representatives(self) -> list[int]:
        return [c[0] for c in self.conjugacy_classes()]

    def commutator_subgroup(self) -> "Subgroup":
        t, inv = self.table, self.inverse
        comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in range(self.order) for b in range(self.order)}
        return self.subgroup(comms)

    def normal_subgroups(self) -> list["Subgroup"]:
        """Every normal subgroup, sorted by (order, elements)."""
        if "normals" not in self.cache:
            found = {self.trivial().elements}
            found |= {self.normal_closure([x]).elements for x in self.class_representatives()}
            frontier = list(found)
            while frontier:
                new = []
                items = list(found)
                for a in frontier:
                    for b in items:
                        j = self.generate(a + b)
                        if j not in found:
                            found.add(j)
                            new.append(j)
                frontier = new
            self.cache["normals"] = [Subgroup(self, e) for e in sorted(found, key=lambda e: (len(e), e))]
        return self.cache["normals"]

    def subgroup_as_group(self, H: "Subgroup") -> tuple["FiniteGroup", list[int]]:
        """H as a group in its own right plus the embedding list new -> old."""
        elems = list(H.elements)
        pos = {x: i for i, x in enumerate(elems)}
        table = [[pos[self.table[a][b]] for b in elems] for a in elems]
        perms = [self.perms[x] for x in elems] if self.perms else None
        names = {k: pos[v] for k, v in self.names.items() if v in pos}
        return FiniteGroup(table, label=None, perms=perms, names=names, check=False), elems

    def quotient(self, N: "Subgroup") -> tuple["FiniteGroup", list[int]]:
        """G/N and the projection list element -> coset index."""
        if not N.is_normal():
            raise InvalidInput("quotient needs a normal subgroup")
        coset = [-1] * self.order
        reps = []
        for g in range(self.order):
            if coset[g] < 0:
                cid = len(reps)
                reps.append(g)
                for x in N.elements:
                    coset[self.table[g][x]] = cid
        table = [[coset[self.table[a][b]] for b in reps] for a in reps]
        label = None if N.order > 1 else self.label
        return FiniteGroup(table, label=label, check=False), coset

    # words
    def element(self, word: str) -> int:
        """Element named by a word: generator names with optional ^k, "e" or
        "1" for the identity, or cycle notation for permutation groups."""
        w = word.replace(" ", "") if not word.strip().startswith("(") else word.strip()
        if w in ("e", "1", "()", ""):
            return self.identity
        if w.startswith("("):
            if not self.perms:
                raise InvalidInput("cycle notation needs a permutation group")
            p = parse_cycles(w, len(self.perms[0]))
            if len(p) != len(self.perms[0]) or p not in self._perm_index:
                raise InvalidInput(f"{word!r} is not in the group")
            return self._perm_index[p]
        names = sorted(self.names, key=len, reverse=True)
        pos, result = 0, self.identity
        while pos < len(w):
            for nm in names:
                if w.startswith(nm, pos):
                    pos += len(nm)
                    break
            else:
                raise InvalidInput(f"cannot parse word {word!r}")
            m = re.match(r"\^(-?\d+)", w[pos:])
            k = 1
            if m:
                k = int(m.group(1))
                pos += m.end()
            result = self.table[result][self.power(self.names[nm], k)]
        return result

    def describe(self, x: int) -> str:
        if self.perms:
            return perm_to_cycles(self.perms[x])
        for nm, v in self.names.items():
            if v == x:
                return nm
        return f"#{x}"


class Subgroup:
    """Sorted element set of a parent group.  Compared by elements."""

    __slots__ = ("group", "elements", "_set")

    def __init__(self, group: FiniteGroup, elements: Sequence[int]):
        self.group = group
        self.elements = tuple(sorted(set(elements)))
        self._set = frozenset(self.elements)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={self.generators_text()})"

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_cyclic(self) -> bool:
        return any(self.group.orders[x] == self.order for x in self.elements)

    def is_normal(self) -> bool:
        G = self.group
        return all(G.conj(x, g) in self._set for g in range(G.order) for x in self.elements)

    def is_normal_in(self, other: "Subgroup") -> bool:
        G = self.group
        return self <= other and all(G.conj(x, g) in self._set for g in other.elements for x in self.elements)

    def join(self, other: "Subgroup") -> "Subgroup":
        return self.group.subgroup(self.elements + other.elements)

    def generators(self) -> list[int]:
        """A short generating list (greedy, deterministic)."""
        G = self.group
        gens: list[int] = []
        current = (G.identity,)
        cand = sorted(self.elements, key=lambda x: (-G.orders[x], x))
        while len(current) < self.order:
            best = max(cand, key=lambda x: (len(G.generate(gens + [x])), -cand.index(x)))
            gens.append(best)
            current = G.generate(gens)
        return gens

    def generators_text(self) -> list[str]:
        return [self.group.describe(x) for x in self.generators()]

    def image(self, phi: Sequence[int], target: Optional[FiniteGroup] = None) -> "Subgroup":
        return Subgroup(target or self.group, [phi[x] for x in self.elements])


def group_from_generators(perms: Sequence, label=None, names=None, max_order: int = MAX_ORDER) -> FiniteGroup:
    """Permutation group generated by ``perms`` (image tuples or cycle strings)."""
    raw = [parse_cycles(p) if isinstance(p, str) else tuple(p) for p in perms]
    degree = max((len(p) for p in raw), default=1) or 1
    if names:
        named = {k: (parse_cycles(v) if isinstance(v, str) else tuple(v)) for k, v in names.items()}
        degree = max([degree] + [len(p) for p in named.values()])
    gens = [p + tuple(range(len(p), degree)) for p in raw]
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in index:
                if len(elems) >= max_order:
                    raise ResourceLimit(f"closure exceeds {max_order} elements")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    table = [[index[compose(a, b)] for b in elems] for a in elems]
    name_idx = {}
    for k, v in (names or {}).items():
        p = named[k]
        p = p + tuple(range(len(p), degree))
        if p not in index:
            raise InvalidInput(f"named element {k} is not in the group")
        name_idx[k] = index[p]
    return FiniteGroup(table, label=label, perms=elems, names=name_idx)


def cyclic_group(n: int, name: str = "g") -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, label=f"C{n}", names={name: 1 % n}, check=False)


def direct_product(G: FiniteGroup, H: FiniteGroup, label=None) -> FiniteGroup:
    """G x H with index g*|H| + h."""
    m = H.order
    table = [
        [G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(G.order * m)]
        for a in range(G.order * m)
    ]
    names = {k: v * m + H.identity for k, v in G.names.items()}
    names.update({k: G.identity * m + v for k, v in H.names.items() if k not in names})
    return FiniteGroup(table, label=label, names=names, check=False)


def abelian_group(moduli: Sequence[int]) -> FiniteGroup:
    """Z/m_1 x ... x Z/m_k with mixed-radix indices (first factor most
    significant) and generators named e1..ek."""
    G = cyclic_group(1)
    for m in moduli:
        G = direct_product(G, cyclic_group(m))
    G.label = "x".join(f"C{m}" for m in moduli) or "C1"
    G.cache["moduli"] = tuple(moduli)
    G.names = {f"e{k + 1}": from_coords(G, [int(i == k) for i in range(len(moduli))])
               for k in range(len(moduli))}
    return G


def coords(G: FiniteGroup, x: int) -> tuple[int, ...]:
    """Coordinates of x in a group built by ``abelian_group``."""
    out = []
    for m in reversed(G.cache["moduli"]):
        out.append(x % m)
        x //= m
    return tuple(reversed(out))


def from_coords(G: FiniteGroup, v: Sequence[int]) -> int:
    x = 0
    for m, c in zip(G.cache["moduli"], v):
        x = x * m + c % m
    return x
