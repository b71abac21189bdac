"""Named groups used by the tables, each with its standard generators."""
from functools import lru_cache

from ..errors import InvalidInput
from .group import FiniteGroup, group_from_generators

# name -> (generators, named elements); permutations in 1-based cycle notation
_SPECS = {
    "C2^2": (["(1 2)", "(3 4)"], {"x1": "(1 2)", "x2": "(3 4)"}),
    "C2^3": (["(1 2)", "(3 4)", "(5 6)"], {"x1": "(1 2)", "x2": "(3 4)", "x3": "(5 6)"}),
    "C4xC2": (["(1 2 3 4)", "(5 6)"], {"x1": "(1 2 3 4)", "y": "(5 6)"}),
    "D8": (["(1 2 3 4)", "(1 3)"], {"r": "(1 2 3 4)", "s": "(1 3)"}),
    "D10": (["(1 2 3 4 5)", "(2 5)(3 4)"], {"r": "(1 2 3 4 5)", "s": "(2 5)(3 4)"}),
    "A4": (["(1 2 3)", "(1 2)(3 4)"], {"a": "(1 2 3)", "b": "(1 2)(3 4)"}),
    "F20": (["(1 2 3 4 5)", "(2 3 5 4)"], {"r": "(1 2 3 4 5)", "t": "(2 3 5 4)"}),
    "S4": (["(1 2 3 4)", "(1 2)"], {}),
    "A5": (["(1 2 3 4 5)", "(1 2 3)"], {}),
    "S5": (["(1 2 3 4 5)", "(1 2)"], {}),
    "PSL(2,7)": (
        ["(1 2)(3 6)", "(2 6 7)(3 4 5)"],
        {
            "a": "(1 2)(3 6)",
            "b": "(2 6 7)(3 4 5)",
            "r": "(1 3 2 6)(5 7)",
            "s": "(1 2)(5 7)",
            "u": "(2 6)(4 5)",
            "v": "(1 2 4)(3 6 5)",
        },
    ),
}

# Q8 acts on itself by left multiplication; elements 1..8 stand for
# 1, -1, i, -i, j, -j, k, -k.
_Q8_UNITS = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
_QMUL = {
    ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
    ("i", "1"): "i", ("i", "i"): "-1", ("i", "j"): "k", ("i", "k"): "-j",
    ("j", "1"): "j", ("j", "i"): "-k", ("j", "j"): "-1", ("j", "k"): "i",
    ("k", "1"): "k", ("k", "i"): "j", ("k", "j"): "-i", ("k", "k"): "-1",
}


def _qmul(a: str, b: str) -> str:
    sign = (a.startswith("-")) ^ (b.startswith("-"))
    r = _QMUL[(a.lstrip("-"), b.lstrip("-"))]
    if sign:
        r = r[1:] if r.startswith("-") else "-" + r
    return r


def _q8_left(unit: str) -> tuple[int, ...]:
    return tuple(_Q8_UNITS.index(_qmul(unit, x)) for x in _Q8_UNITS)


CATALOG_NAMES = tuple(list(_SPECS) + ["Q8"])


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    """Catalog group by name; see ``CATALOG_NAMES``."""
    if name == "Q8":
        names = {u: _q8_left(u) for u in ("i", "j", "k")}
        return group_from_generators([names["i"], names["j"]], label="Q8", names=names)
    if name not in _SPECS:
        raise InvalidInput(f"unknown group {name!r}; known: {', '.join(CATALOG_NAMES)}")
    gens, names = _SPECS[name]
    return group_from_generators(gens, label=name, names=names)
