# cython: language_level=3
"""Compiled pairwise kernels.

Same arithmetic, in the same order, as ``softflat._pyfield``. Rows are
independent, so the OpenMP split over ``i`` does not change any result.
"""
import numpy as np

cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt

cnp.import_array()


def pairwise_distances(const double[:, ::1] P):
    cdef Py_ssize_t N = P.shape[0], n = P.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, t
    out = np.zeros((N, N), dtype=np.float64)
    cdef double[:, ::1] d = out
    with nogil:
        for i in range(N):
            for j in range(i + 1, N):
                s = 0.0
                for k in range(n):
                    t = P[i, k] - P[j, k]
                    s = s + t * t
                s = sqrt(s)
                d[i, j] = s
                d[j, i] = s
    return out


def total_field(const double[:, ::1] P,
                const unsigned char[:, ::1] is_nbr,
                const double[:, ::1] nd,
                const double[:, ::1] d0,
                double alpha1,
                double alpha2,
                int num_threads=1):
    cdef Py_ssize_t N = P.shape[0], n = P.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double s, t, d, cr, ce
    rsum_arr = np.zeros((N, n), dtype=np.float64)
    esum_arr = np.zeros((N, n), dtype=np.float64)
    out = np.empty((N, n), dtype=np.float64)
    cdef double[:, ::1] rsum = rsum_arr
    cdef double[:, ::1] esum = esum_arr
    cdef double[:, ::1] V = out
    if num_threads < 1:
        num_threads = 1
    for i in prange(N, nogil=True, schedule="static", num_threads=num_threads):
        for j in range(N):
            if j == i:
                continue
            s = 0.0
            for k in range(n):
                t = P[i, k] - P[j, k]
                s = s + t * t
            d = sqrt(s)
            if d == 0.0:
                continue
            if is_nbr[i, j]:
                cr = (1.0 - nd[i, j]) / d
                ce = (nd[i, j] * (d0[i, j] - d)) / d
            else:
                cr = 1.0 / d
                ce = 0.0
            for k in range(n):
                t = P[i, k] - P[j, k]
                rsum[i, k] = rsum[i, k] + cr * t
                esum[i, k] = esum[i, k] + ce * t
        for k in range(n):
            V[i, k] = alpha1 * rsum[i, k] + alpha2 * esum[i, k]
    return out
