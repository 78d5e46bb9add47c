"""Hochschild and cyclic homology of finite-dimensional algebras over F_p.

Exact computation of HH and HC via sparse linear algebra mod p, Hodge and
conjugate filtrations with their spectral sequences, the p-th power
comparison map in degree zero, and verification of mod p**2 lifts.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .conventions import SIGN_CONVENTION

__all__ = ["SIGN_CONVENTION", "__version__"]
