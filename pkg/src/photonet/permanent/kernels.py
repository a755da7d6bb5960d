"""Permanent algorithms with a compiled fast path.

The Cython extension is used when it was built and ``PHOTONET_NO_EXT`` is
not set; otherwise the numpy fallback provides the same functions.
"""

import os

import numpy as np

from ..errors import NotSquare
from . import _fallback

perm_naive = _fallback.perm_naive

BACKEND = "python"
if not os.environ.get("PHOTONET_NO_EXT"):
    try:
        from . import _kernels as _ext

        BACKEND = "cython"
    except ImportError:  # extension not compiled
        _ext = None
else:
    _ext = None


def _square(a):
    a = np.ascontiguousarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"permanent needs a square matrix, got shape {a.shape}")
    return a


def perm_ryser(a):
    a = _square(a)
    return _ext.perm_ryser(a) if _ext is not None else _fallback.perm_ryser(a)


def perm_glynn(a):
    a = _square(a)
    return _ext.perm_glynn(a) if _ext is not None else _fallback.perm_glynn(a)


ALGORITHMS = {"naive": perm_naive, "ryser": perm_ryser, "glynn": perm_glynn}


def permanent(a, algo="auto"):
    """Permanent of a square matrix.

    ``algo="auto"`` uses the direct expansion for ``k <= 2`` and Glynn's
    formula otherwise.
    """
    a = _square(a)
    if algo == "auto":
        k = a.shape[0]
        if k == 0:
            return 1 + 0j
        if k == 1:
            return complex(a[0, 0])
        if k == 2:
            return complex(a[0, 0] * a[1, 1] + a[0, 1] * a[1, 0])
        algo = "glynn"
    try:
        fn = ALGORITHMS[algo]
    except KeyError:
        raise ValueError(f"unknown permanent algorithm {algo!r}") from None
    return fn(a)
