"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best-of-N time for each backend and the
speedup. Both backends are imported directly, so the environment switch is
not needed here.
"""
import argparse
import timeit

import numpy as np

from tameconf import _pykernels
from tameconf.arith import primes_up_to, primitive_root

try:
    from tameconf import _kernels
except ImportError:
    _kernels = None

PRIMES = np.asarray(primes_up_to(10**6)[1:], dtype=np.int64)
BIG_P = 999983
G = primitive_root(BIG_P)


def workloads(mod):
    return {
        "jacobi x20000": lambda: [mod.jacobi(a, 1000003) for a in range(1, 20001)],
        "legendre_row (78k primes)": lambda: mod.legendre_row(7, PRIMES),
        "bsgs mod 999983 x50": lambda: [mod.bsgs(G, t, BIG_P, BIG_P - 1) for t in range(2, 52)],
        "powmod x20000": lambda: [mod.powmod(a, 10**9 + 6, 10**9 + 7) for a in range(1, 20001)],
        "census_orbits s=4": lambda: mod.census_orbits(4),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback can be timed")
    py = workloads(_pykernels)
    cy = workloads(_kernels) if _kernels is not None else {}
    print(f"{'kernel':28s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in py.items():
        t_py = best(fn, args.repeat)
        if name in cy:
            # same answers from both before timing counts for anything
            a, b = fn(), cy[name]()
            assert np.array_equal(np.asarray(a), np.asarray(b)), name
            t_cy = best(cy[name], args.repeat)
            print(f"{name:28s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
        else:
            print(f"{name:28s} {t_py:10.4f} {'-':>10s}")


if __name__ == "__main__":
    main()
