"""Sign matrices and the quadratic-residue (QR) criterion.

A sign matrix has zero diagonal and +-1 elsewhere.  It is a QR matrix when
some distinct odd primes p_1..p_s give entry (i, j) = (p_i / p_j).  The
decision rule looks only at the diagonal of S^2: S is QR exactly when that
diagonal is a rearrangement of s-k copies of s-1 and k copies of s-2k+1 for
some k in 1..s.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .arith import is_prime, primes_up_to
from .errors import InvalidInput

CENSUS_MAX_S = 5


@dataclass(frozen=True)
class SignMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        s = len(rows)
        if s < 1:
            raise InvalidInput("sign matrix must be at least 1x1")
        for i, r in enumerate(rows):
            if len(r) != s:
                raise InvalidInput("sign matrix must be square")
            for j, x in enumerate(r):
                if i == j and x != 0:
                    raise InvalidInput("diagonal entries must be 0")
                if i != j and x not in (1, -1):
                    raise InvalidInput("off-diagonal entries must be +1 or -1")
        object.__setattr__(self, "rows", rows)

    @property
    def s(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def parse(cls, text: str) -> "SignMatrix":
        """Parse "0,-1;-1,0" (rows split by ';', entries by ',')."""
        try:
            rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
        except ValueError as exc:
            raise InvalidInput(f"cannot parse matrix {text!r}") from exc
        return cls(tuple(tuple(r) for r in rows))

    def __str__(self) -> str:
        return ";".join(",".join(str(x) for x in r) for r in self.rows)

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def conjugate(self, perm: Sequence[int]) -> "SignMatrix":
        """P S P^t: entry (perm[i], perm[j]) of the result is entry (i, j) of S."""
        s = self.s
        out = [[0] * s for _ in range(s)]
        for i in range(s):
            for j in range(s):
                out[perm[i]][perm[j]] = self.rows[i][j]
        return SignMatrix(tuple(tuple(r) for r in out))

    def squared_diagonal(self) -> tuple[int, ...]:
        s = self.s
        return tuple(sum(self.rows[i][j] * self.rows[j][i] for j in range(s)) for i in range(s))

    def is_symmetric(self) -> bool:
        return all(self.rows[i][j] == self.rows[j][i] for i in range(self.s) for j in range(i))


@dataclass(frozen=True)
class QrVerdict:
    is_qr: bool
    k: Optional[int]
    diagonal: tuple[int, ...]


def _diag_k(diag: Sequence[int], s: int) -> Optional[int]:
    got = sorted(diag)
    for k in range(1, s + 1):
        if got == sorted([s - 1] * (s - k) + [s - 2 * k + 1] * k):
            return k
    return None


def qr_test(S: SignMatrix) -> QrVerdict:
    diag = S.squared_diagonal()
    k = _diag_k(diag, S.s)
    if S.s == 1:
        k = 1
    return QrVerdict(k is not None, k, diag)


def _check_primes(primes: Sequence[int]):
    if len(set(primes)) != len(primes):
        raise InvalidInput("primes must be distinct")
    for p in primes:
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise InvalidInput(f"{p} is not an odd prime")


def qr_matrix_of_primes(primes: Sequence[int]) -> SignMatrix:
    """Entry (i, j) is the Legendre symbol (p_i / p_j)."""
    primes = [int(p) for p in primes]
    if not primes:
        raise InvalidInput("need at least one prime")
    _check_primes(primes)
    s = len(primes)
    return SignMatrix(
        tuple(
            tuple(0 if i == j else kernels.jacobi(primes[i] % primes[j], primes[j]) for j in range(s))
            for i in range(s)
        )
    )


class _MaskTable(dict):
    """Lazily filled {prime: bitset} for one (direction, sign) pair."""

    def __init__(self, owner, direction, sign):
        super().__init__()
        self.owner, self.direction, self.sign = owner, direction, sign

    def __missing__(self, a):
        self.owner.fill(self.direction, a)
        return self[a]


class _LegendreMasks:
    """Bitsets over the odd primes <= bound, indexed by position in ``primes``.

    ``row[sign][a]`` holds the q with (a/q) = sign and ``col[sign][a]`` the q
    with (q/a) = sign.  Both omit q = a because the symbol is then 0.
    """

    def __init__(self, bound: int):
        self.primes = primes_up_to(bound)[1:]
        self.plist = self.primes.tolist()
        self.full = (1 << len(self.plist)) - 1
        self.row = {sg: _MaskTable(self, "row", sg) for sg in (1, -1)}
        self.col = {sg: _MaskTable(self, "col", sg) for sg in (1, -1)}

    @staticmethod
    def _pack(flags: np.ndarray) -> int:
        return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")

    def fill(self, direction: str, a: int):
        if direction == "row":
            symbols = kernels.legendre_row(a, self.primes)
            plus, minus = symbols == 1, symbols == -1
        else:
            squares = np.zeros(a, dtype=bool)
            squares[(np.arange(1, a, dtype=np.int64) ** 2) % a] = True
            res = self.primes % a
            nonzero = res != 0
            plus, minus = nonzero & squares[res], nonzero & ~squares[res]
        table = self.row if direction == "row" else self.col
        dict.__setitem__(table[1], a, self._pack(plus))
        dict.__setitem__(table[-1], a, self._pack(minus))


@lru_cache(maxsize=4)
def _masks(bound: int) -> _LegendreMasks:
    return _LegendreMasks(bound)


def find_primes_for_sign_matrix(S: SignMatrix, bound: int) -> Optional[tuple[int, ...]]:
    """Lexicographically least tuple of distinct odd primes <= bound whose
    Legendre matrix equals S, or None when the range is exhausted.

    Depth-first search with forward checking: each level carries the
    candidate bitsets of every later position.
    """
    if bound < 3:
        raise InvalidInput("bound must be at least 3")
    tab = _masks(int(bound))
    plist, row, col = tab.plist, tab.row, tab.col
    s = S.s
    rows = S.rows
    chosen: list[int] = []

    def search(t: int, ahead: list[int]) -> bool:
        mask = ahead[0]
        if t == s - 1:
            if mask:
                chosen.append((mask & -mask).bit_length() - 1)
                return True
            return False
        links = [(j - t, row[rows[t][j]], col[rows[j][t]]) for j in range(t + 1, s)]
        while mask:
            low = mask & -mask
            k = low.bit_length() - 1
            a = plist[k]
            nxt = []
            for off, rtab, ctab in links:
                m = ahead[off] & rtab[a] & ctab[a]
                if not m:
                    break
                nxt.append(m)
            else:
                chosen.append(k)
                if search(t + 1, nxt):
                    return True
                chosen.pop()
            mask ^= low
        return False

    if search(0, [tab.full] * s):
        return tuple(plist[k] for k in chosen)
    return None


def inertial_degree_matrix(s: int, r: int) -> SignMatrix:
    """A QR sign matrix whose prime realizations have exactly r primes of
    inertial degree 2 in the multiquadratic field.

    Prime i has degree 2 exactly when row i holds a -1.  r = 1 uses a single
    -1 at (0, 1); r >= 2 uses the symmetric matrix with r-1 entries -1 in the
    first row, which puts a -1 in rows 0..r-1.
    """
    if s < 1:
        raise InvalidInput("s must be positive")
    top = s if s >= 2 else 0
    if not 0 <= r <= top:
        raise InvalidInput(f"r must lie in 0..{top} for s = {s}")
    m = [[0 if i == j else 1 for j in range(s)] for i in range(s)]
    if r == 1:
        m[0][1] = -1
    elif r >= 2:
        for j in range(1, r):
            m[0][j] = m[j][0] = -1
    return SignMatrix(tuple(tuple(row) for row in m))


def canonical_class(S: SignMatrix) -> SignMatrix:
    """Least row-major flattening among all simultaneous row/column permutations."""
    return min((S.conjugate(p) for p in permutations(range(S.s))), key=SignMatrix.flat)


@dataclass(frozen=True)
class Census:
    sign_classes: int
    qr_classes: int


def census(s: int) -> Census:
    """Permutation classes of s x s sign matrices and how many are QR."""
    if not 1 <= s <= CENSUS_MAX_S:
        raise InvalidInput(f"census supports 1 <= s <= {CENSUS_MAX_S}")
    classes, qr = kernels.census_orbits(s)
    return Census(classes, qr)


def all_sign_matrices(s: int):
    """Every s x s sign matrix, in bitmask order."""
    pos = [(i, j) for i in range(s) for j in range(s) if i != j]
    for mask in range(1 << len(pos)):
        m = [[0] * s for _ in range(s)]
        for b, (i, j) in enumerate(pos):
            m[i][j] = -1 if (mask >> b) & 1 else 1
        yield SignMatrix(tuple(tuple(r) for r in m))
