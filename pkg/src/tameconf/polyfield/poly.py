"""Integer polynomials: parsing, printing and the exact discriminant."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ..errors import InvalidInput

MAX_DEGREE = 16

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


@dataclass(frozen=True)
class IntPoly:
    """Coefficients constant term first; the leading coefficient is nonzero."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise InvalidInput("the zero polynomial is not allowed")
        if len(c) - 1 > MAX_DEGREE:
            raise InvalidInput(f"degree above {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.lead == 1

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Read forms like "x^4 - x - 1", "x**3+2*x" or "1,0,-5" (constant first)."""
        s = text.strip().replace("**", "^").replace("−", "-")
        if re.fullmatch(r"-?\d+(\s*,\s*-?\d+)*", s):
            return cls(tuple(int(x) for x in s.split(",")))
        s = s.replace(" ", "")
        if not s or not re.fullmatch(r"[-+0-9x^*]+", s):
            raise InvalidInput(f"cannot parse polynomial {text!r}")
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise InvalidInput(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            if pos > 0 and not m.group(1):
                raise InvalidInput(f"cannot parse polynomial {text!r}")
            c = int(m.group(2)) if m.group(2) else 1
            e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
            coeffs[e] = coeffs.get(e, 0) + sign * c
            pos = m.end()
        n = max(coeffs)
        return cls(tuple(coeffs.get(i, 0) for i in range(n + 1)))

    def __str__(self):
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = "x" if e == 1 else f"x^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x: int) -> int:
        r = 0
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def shift(self, c: int) -> "IntPoly":
        """f(x + c)."""
        out = [0] * len(self.coeffs)
        for a in reversed(self.coeffs):
            # out = out * (x + c) + a
            nxt = [0] * len(out)
            for i in range(len(out) - 1, -1, -1):
                nxt[i] = out[i] * c + (out[i - 1] if i else 0)
            nxt[0] += a
            out = nxt
        return IntPoly(tuple(out))


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) as the Sylvester determinant (coefficients constant first)."""
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        raise InvalidInput("resultant of the zero polynomial")
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    fr, gr = list(reversed(f)), list(reversed(g))
    rows = []
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise InvalidInput("discriminant needs degree >= 1")
    if n == 1:
        return 1
    df = [i * f.coeffs[i] for i in range(1, n + 1)]
    r = resultant(list(f.coeffs), df)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rmd = divmod(sign * r, f.lead)
    assert rmd == 0
    return q
