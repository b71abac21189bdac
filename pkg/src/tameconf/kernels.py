"""Backend selector for the arithmetic kernels.

The compiled extension is used when it imports; setting the environment
variable ``TAMECONF_PURE_PYTHON=1`` forces the pure-Python fallback.
``BACKEND`` names the active implementation.
"""
import os

from . import _pykernels

if os.environ.get("TAMECONF_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

powmod = _impl.powmod
jacobi = _impl.jacobi
legendre_row = _impl.legendre_row
bsgs = _impl.bsgs
census_orbits = _impl.census_orbits

__all__ = ["BACKEND", "powmod", "jacobi", "legendre_row", "bsgs", "census_orbits"]
