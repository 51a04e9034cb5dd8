"""Interpreted kernels, used when the compiled extension is unavailable.

Vectorised over the owner index ``i`` and looping over ``j`` so every
owner's sums are accumulated in ascending ``j`` order, like the compiled
kernel.
"""
import numpy as np


def pairwise_distances(P):
    N = P.shape[0]
    d = np.zeros((N, N), dtype=np.float64)
    for i in range(N - 1):
        diff = P[i] - P[i + 1:]
        row = np.sqrt((diff * diff).sum(axis=1))
        d[i, i + 1:] = row
        d[i + 1:, i] = row
    return d


def total_field(P, is_nbr, nd, d0, alpha1, alpha2, num_threads=1):
    # overflow is reported by the caller as a divergence, not as a numpy warning
    with np.errstate(over="ignore", invalid="ignore"):
        return _total_field(P, is_nbr, nd, d0, alpha1, alpha2)


def _total_field(P, is_nbr, nd, d0, alpha1, alpha2):
    N, n = P.shape
    rsum = np.zeros((N, n), dtype=np.float64)
    esum = np.zeros((N, n), dtype=np.float64)
    nbr = is_nbr.astype(bool)
    for j in range(N):
        diff = P - P[j]
        d = np.sqrt((diff * diff).sum(axis=1))
        live = d != 0.0  # also drops i == j
        dj = np.where(live, d, 1.0)
        col = nbr[:, j]
        cr = np.where(col, (1.0 - nd[:, j]) / dj, 1.0 / dj)
        ce = np.where(col, (nd[:, j] * (d0[:, j] - d)) / dj, 0.0)
        cr[~live] = 0.0
        ce[~live] = 0.0
        rsum += cr[:, None] * diff
        esum += ce[:, None] * diff
    return alpha1 * rsum + alpha2 * esum
