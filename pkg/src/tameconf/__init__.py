"""Tame ramification and decomposition configurations over Q.

Submodules:

``arith``        modular arithmetic kernel (primes, discrete logs, residue symbols)
``signmatrix``   sign matrices, the QR criterion and prime searches
``smallgroup``   finite groups, configurations and obstruction predicates
``cycabelian``   abelian fields inside cyclotomic fields and realization searches
``polyfield``    polynomial factorization mod p and splitting patterns
``corpus``       bundled table data and its verifier
"""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
