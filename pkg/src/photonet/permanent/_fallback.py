"""Pure numpy permanent kernels, used when the compiled extension is absent."""

from itertools import permutations

import numpy as np


def perm_naive(a):
    """Sum over all k! permutations; the reference oracle."""
    a = np.asarray(a, dtype=complex)
    k = a.shape[0]
    total = 0j
    rows = np.arange(k)
    for p in permutations(range(k)):
        total += np.prod(a[rows, p])
    return complex(total)


def _gray_flips(n):
    """Index of the bit that changes at each step of an n-bit Gray code."""
    steps = np.arange(1, 1 << n)
    # lowest set bit of the step counter
    return np.log2(steps & -steps).astype(np.intp)


def perm_ryser(a):
    """Inclusion-exclusion over column subsets, visited in Gray-code order."""
    a = np.asarray(a, dtype=complex)
    k = a.shape[0]
    if k == 0:
        return 1 + 0j
    row_sums = np.zeros(k, dtype=complex)
    in_set = np.zeros(k, dtype=bool)
    size = 0
    total = 0j
    for j in _gray_flips(k):
        if in_set[j]:
            row_sums -= a[:, j]
            size -= 1
        else:
            row_sums += a[:, j]
            size += 1
        in_set[j] = not in_set[j]
        p = np.prod(row_sums)
        total += -p if size % 2 else p
    return complex(total if k % 2 == 0 else -total)


def perm_glynn(a):
    a = np.asarray(a, dtype=complex)
    k = a.shape[0]
    if k == 0:
        return 1 + 0j
    col = a.sum(axis=0)
    total = np.prod(col)
    delta = np.ones(k)
    parity = 1.0
    if k > 1:
        for i in _gray_flips(k - 1):
            r = i + 1
            col -= 2 * delta[r] * a[r]
            delta[r] = -delta[r]
            parity = -parity
            total += parity * np.prod(col)
    return complex(total / (1 << (k - 1)))
