"""Permanent-based evaluation of linear-optical circuits."""

from .fock import amplitude, patterns, submatrix
from .kernels import BACKEND, perm_glynn, perm_naive, perm_ryser, permanent

__all__ = [
    "BACKEND", "amplitude", "patterns", "submatrix",
    "perm_glynn", "perm_naive", "perm_ryser", "permanent",
]
