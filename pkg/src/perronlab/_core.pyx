# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: BFS, CSR matvec, power iteration.

Contracts match `_pure`; CSR arrays must be contiguous int32.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def bfs_distances(const int[::1] indptr, const int[::1] indices, int source, int n):
    """Hop distances from `source`; -1 marks unreachable vertices."""
    dist_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef int u, v, du
    cdef Py_ssize_t k
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return dist_arr


def csr_matvec(const int[::1] indptr, const int[::1] indices, const double[::1] x):
    """y = A x for the 0/1 adjacency matrix stored as CSR."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += x[indices[k]]
        out[i] = acc
    return out_arr


def power_iteration(
    const int[::1] indptr,
    const int[::1] indices,
    const double[::1] x0,
    double rq_tol,
    double res_tol,
    long long max_matvecs,
):
    """Power iteration on the adjacency matrix; see `_pure.power_iteration`."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    x_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] y = y_arr
    cdef Py_ssize_t i, k
    cdef double nrm = 0.0
    for i in range(n):
        x[i] = x0[i]
        nrm += x[i] * x[i]
    nrm = sqrt(nrm)
    if nrm == 0.0:
        raise ValueError("start vector is zero")
    for i in range(n):
        x[i] /= nrm
    cdef double rho = 0.0, rho_prev = 0.0, acc, scale, res2, diff
    cdef bint have_prev = False
    cdef long long matvecs = 0
    while matvecs < max_matvecs:
        for i in range(n):
            acc = 0.0
            for k in range(indptr[i], indptr[i + 1]):
                acc += x[indices[k]]
            y[i] = acc
        matvecs += 1
        rho = 0.0
        for i in range(n):
            rho += x[i] * y[i]
        scale = fabs(rho)
        if scale < 1.0:
            scale = 1.0
        if have_prev and fabs(rho - rho_prev) <= rq_tol * scale:
            res2 = 0.0
            for i in range(n):
                diff = y[i] - rho * x[i]
                res2 += diff * diff
            if sqrt(res2) <= res_tol * scale:
                return rho, x_arr, matvecs, True
        nrm = 0.0
        for i in range(n):
            nrm += y[i] * y[i]
        nrm = sqrt(nrm)
        if nrm == 0.0:
            return 0.0, x_arr, matvecs, False
        for i in range(n):
            x[i] = y[i] / nrm
        rho_prev = rho
        have_prev = True
    return rho, x_arr, matvecs, False
