# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gray-code permanent kernels (Ryser and Glynn)."""

import numpy as np
cimport cython


def perm_ryser(double complex[:, ::1] a):
    cdef Py_ssize_t k = a.shape[0]
    cdef Py_ssize_t i, j, step, nsteps, size = 0
    cdef double complex p, total = 0
    if k == 0:
        return 1 + 0j
    row = np.zeros(k, dtype=complex)
    flag = np.zeros(k, dtype=np.int8)
    cdef double complex[::1] rs = row
    cdef signed char[::1] in_set = flag
    nsteps = (<Py_ssize_t>1) << k
    for step in range(1, nsteps):
        j = 0
        while not ((step >> j) & 1):
            j += 1
        if in_set[j]:
            for i in range(k):
                rs[i] = rs[i] - a[i, j]
            size -= 1
        else:
            for i in range(k):
                rs[i] = rs[i] + a[i, j]
            size += 1
        in_set[j] = 1 - in_set[j]
        p = 1
        for i in range(k):
            p = p * rs[i]
        if size & 1:
            total = total - p
        else:
            total = total + p
    if k & 1:
        total = -total
    return complex(total)


def perm_glynn(double complex[:, ::1] a):
    cdef Py_ssize_t k = a.shape[0]
    cdef Py_ssize_t i, j, r, step, nsteps
    cdef double complex p, total
    cdef double parity = 1.0
    if k == 0:
        return 1 + 0j
    colarr = np.asarray(a).sum(axis=0)
    sgn = np.ones(k)
    cdef double complex[::1] col = colarr
    cdef double[::1] delta = sgn
    p = 1
    for j in range(k):
        p = p * col[j]
    total = p
    nsteps = (<Py_ssize_t>1) << (k - 1)
    for step in range(1, nsteps):
        r = 0
        while not ((step >> r) & 1):
            r += 1
        r += 1
        for j in range(k):
            col[j] = col[j] - 2 * delta[r] * a[r, j]
        delta[r] = -delta[r]
        parity = -parity
        p = 1
        for j in range(k):
            p = p * col[j]
        total = total + parity * p
    return complex(total / (<double>nsteps))
