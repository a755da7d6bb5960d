"""Fock-space amplitudes of linear interferometers via permanents.

Convention: ``U[j, i]`` is the single-photon amplitude from input mode ``i``
to output mode ``j``.
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, prod, sqrt

import numpy as np

from ..errors import PhotonNumberMismatch, TooManyOutcomes
from .kernels import permanent

MAX_OUTCOMES = 10**6


def submatrix(U, s, t):
    """``U_{t,s}``: column ``i`` repeated ``s_i`` times, row ``j`` repeated ``t_j`` times."""
    cols = np.repeat(np.arange(len(s)), s)
    rows = np.repeat(np.arange(len(t)), t)
    return np.asarray(U)[np.ix_(rows, cols)]


def amplitude(U, s, t, algo="auto"):
    """Transition amplitude ``<t| U |s>`` between occupation patterns."""
    s, t = tuple(int(x) for x in s), tuple(int(x) for x in t)
    if sum(s) != sum(t):
        raise PhotonNumberMismatch(f"input has {sum(s)} photons, output {sum(t)}")
    norm = sqrt(prod(factorial(x) for x in s) * prod(factorial(x) for x in t))
    return permanent(submatrix(U, s, t), algo) / norm


def count_patterns(n, m):
    from math import comb
    return comb(n + m - 1, n) if m else int(n == 0)


def patterns(n, m):
    """All occupation tuples of ``n`` photons in ``m`` modes."""
    if count_patterns(n, m) > MAX_OUTCOMES:
        raise TooManyOutcomes(f"{count_patterns(n, m)} patterns for n={n}, m={m}")
    return list(_patterns(n, m))


@lru_cache(maxsize=256)
def _patterns(n, m):
    out = []
    for combo in combinations_with_replacement(range(m), n):
        t = [0] * m
        for j in combo:
            t[j] += 1
        out.append(tuple(t))
    return tuple(out)


def lift_column(U, s, algo="auto"):
    """All nonzero ``(t, amplitude)`` pairs for input pattern ``s``."""
    out = []
    for t in _patterns(sum(s), len(s)):
        a = amplitude(U, s, t, algo)
        if a != 0:
            out.append((t, a))
    return out
