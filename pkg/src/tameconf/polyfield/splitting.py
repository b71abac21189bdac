"""Prime splitting in Q[x]/(f): Dedekind's criterion, the maximal-order
fallback, irreducibility certification and ramified-prime determination."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence

from ..arith import factorize, is_prime, primes_up_to
from ..errors import InvalidInput, PartialResult
from . import modp
from .order import local_pieces, p_maximal_order
from .poly import IntPoly, discriminant

TRIAL_LIMIT = 10**7
SMALL_TRIAL = 10**4
IRREDUCIBILITY_PRIMES = 80


@dataclass(frozen=True)
class SplittingPattern:
    """Multiset of (e, f) pairs, stored sorted in decreasing order."""

    pairs: tuple[tuple[int, int], ...]
    method: str = "dedekind"

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(((int(e), int(f)) for e, f in self.pairs), reverse=True)))

    @property
    def degree(self) -> int:
        return sum(e * f for e, f in self.pairs)

    @property
    def ramified(self) -> bool:
        return any(e > 1 for e, _ in self.pairs)

    def __eq__(self, other):
        if isinstance(other, SplittingPattern):
            return self.pairs == other.pairs
        return NotImplemented

    def __hash__(self):
        return hash(self.pairs)

    def __str__(self):
        return " ".join(f"P{'^' + str(e) if e > 1 else ''}(f={f})" for e, f in self.pairs)


@dataclass(frozen=True)
class IndexObstruction:
    prime: int
    reason: str = "p divides the index and the maximal-order route is disabled"


def factor_mod_p(f: IntPoly, p: int) -> list[tuple[tuple[int, ...], int]]:
    """Monic irreducible factors of f mod p with multiplicities."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if f.lead % p == 0:
        raise InvalidInput(f"leading coefficient vanishes mod {p}")
    return [(tuple(g), k) for g, k in modp.factor_mod_p_list(f.coeffs, p)]


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _dedekind(f: IntPoly, p: int, fac) -> bool:
    g = [1]
    for gi, _ in fac:
        g = modp.mul(g, list(gi), p)
    h = modp.divmod_(modp.trim(f.coeffs, p), g, p)[0]
    gh = _int_mul(g, h)
    diff = [(f.coeffs[i] if i < len(f.coeffs) else 0) - (gh[i] if i < len(gh) else 0)
            for i in range(max(len(f.coeffs), len(gh)))]
    assert all(c % p == 0 for c in diff)
    F = modp.trim([c // p for c in diff], p)
    common = modp.gcd(F, modp.gcd(g, h, p), p)
    return modp.deg(common) == 0


def _require_monic(f: IntPoly):
    if not f.is_monic():
        raise InvalidInput("a monic polynomial is required")


def dedekind_index_test(f: IntPoly, p: int) -> bool:
    """True when p does not divide [O_K : Z[x]/(f)]."""
    _require_monic(f)
    if not is_irreducible(f):
        raise InvalidInput(f"{f} is reducible over Q")
    return _dedekind(f, p, factor_mod_p(f, p))


def _subset_sums(degrees: Sequence[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


@lru_cache(maxsize=512)
def _irreducible_cached(coeffs: tuple[int, ...]) -> bool:
    f = IntPoly(coeffs)
    n = f.degree
    if n <= 1:
        return n == 1
    disc = discriminant(f)
    if disc == 0:
        return False
    possible = set(range(1, n))
    tried = 0
    for p in primes_up_to(4000).tolist():
        if tried >= IRREDUCIBILITY_PRIMES:
            break
        if (disc * f.lead) % p == 0:
            continue
        tried += 1
        degs = [modp.deg(g) for g, _ in modp.factor_mod_p_list(f.coeffs, p)]
        possible &= _subset_sums(degs)
        if not possible:
            return True
    # rare Galois groups defeat the degree sieve; fall back to exact factoring
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(sum(c * x**i for i, c in enumerate(coeffs)), x).is_irreducible


def is_irreducible(f: IntPoly) -> bool:
    """Irreducibility over Q, certified by mod-p factor degrees when possible."""
    return _irreducible_cached(f.coeffs)


def splitting_pattern(f: IntPoly, p: int, maximal: bool = True):
    """(e, f) pairs of the primes above p, or IndexObstruction.

    Dedekind's criterion reads the answer off f mod p when it applies;
    otherwise the p-maximal order is built and decomposed.
    """
    _require_monic(f)
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    fac = factor_mod_p(f, p)
    if _dedekind(f, p, fac):
        return SplittingPattern(tuple((k, len(g) - 1) for g, k in fac), "dedekind")
    if not maximal:
        return IndexObstruction(p)
    O = p_maximal_order(list(f.coeffs), p)
    return SplittingPattern(tuple(local_pieces(O, p)), "maximal-order")


def factor_discriminant(d: int, candidates: Iterable[int] = (), limit: int = TRIAL_LIMIT) -> dict[int, int]:
    """Prime factorization of |d|: candidates, small trial division, then
    Pollard rho below 2^64 and trial division up to ``limit`` above it."""
    rest = abs(d)
    if rest == 0:
        raise InvalidInput("zero discriminant")
    out: dict[int, int] = {}

    def take(q):
        nonlocal rest
        while rest % q == 0:
            out[q] = out.get(q, 0) + 1
            rest //= q

    for q in sorted(set(int(c) for c in candidates)):
        if q > 1 and is_prime(q):
            take(q)
    for q in primes_up_to(SMALL_TRIAL).tolist():
        if q * q > rest:
            break
        take(q)
    if rest > 1 and rest < 2**64:
        for q, k in factorize(rest).items():
            out[q] = out.get(q, 0) + k
        return dict(sorted(out.items()))
    if rest > 1:
        for q in primes_up_to(limit).tolist():
            if q <= SMALL_TRIAL:
                continue
            if q * q > rest:
                break
            if rest % q == 0:
                take(q)
                if rest < 2**64:
                    for r, k in (factorize(rest).items() if rest > 1 else ()):
                        out[r] = out.get(r, 0) + k
                    rest = 1
                    break
        if rest > 1 and rest >= limit * limit:
            raise PartialResult(f"unfactored discriminant cofactor {rest}", unresolved=rest)
        if rest > 1:
            out[rest] = out.get(rest, 0) + 1
    return dict(sorted(out.items()))


def ramified_primes(f: IntPoly, candidates: Iterable[int] = ()) -> dict[int, SplittingPattern]:
    """Primes ramified in Q[x]/(f), each with its splitting pattern."""
    _require_monic(f)
    if not is_irreducible(f):
        raise InvalidInput(f"{f} is reducible over Q")
    out = {}
    for p in factor_discriminant(discriminant(f), candidates):
        pat = splitting_pattern(f, p)
        if pat.ramified:
            out[p] = pat
    return out


@dataclass
class EntryReport:
    status: str  # "pass", "fail" or "index_obstruction"
    details: list[str] = field(default_factory=list)
    ramified: dict[int, list[list[int]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"status": self.status, "details": self.details,
                "ramified": {str(p): pat for p, pat in self.ramified.items()}}


def verify_realization_data(coeffs: Sequence[int], claims: Sequence[dict]) -> EntryReport:
    """Check a polynomial against claimed primes, (e, f) and splitting patterns.

    ``claims`` holds dicts with keys p, e, f and pattern (list of [e, f]).
    """
    f = IntPoly(tuple(coeffs))
    details = []
    claimed = {int(c["p"]): c for c in claims}
    for p, c in claimed.items():
        if c["e"] % p == 0:
            details.append(f"e = {c['e']} at {p} is not tame")
    try:
        found = ramified_primes(f, candidates=claimed)
    except PartialResult as exc:
        return EntryReport("fail", details + [str(exc)])
    report_ram = {p: [list(x) for x in pat.pairs] for p, pat in found.items()}
    if set(found) != set(claimed):
        details.append(f"ramified primes {sorted(found)} differ from claimed {sorted(claimed)}")
    for p, c in claimed.items():
        pat = found.get(p) or splitting_pattern(f, p)
        if isinstance(pat, IndexObstruction):
            return EntryReport("index_obstruction", details + [f"index obstruction at {p}"], report_ram)
        want = SplittingPattern(tuple(tuple(x) for x in c["pattern"]))
        if pat != want:
            details.append(f"pattern at {p} is {list(pat.pairs)}, claimed {list(want.pairs)}")
        if lcm(*(e for e, _ in pat.pairs)) != c["e"]:
            details.append(f"ramification index {c['e']} at {p} is not the lcm of the pattern's")
    return EntryReport("fail" if details else "pass", details, report_ram)
