"""Directed soft neighborhoods: k nearest points with graded neighbor degrees.

A neighbor's degree is ``d_min / d0_ij``, where ``d_min`` is the owner's
distance to its closest selected neighbor. A genuine neighbor scores near 1.
A far point pulled in by a large ``k`` (a short-circuit edge) scores near 0.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DuplicatePointWarning


@dataclass(frozen=True)
class SoftNeighborhood:
    owner: int
    indices: tuple[int, ...]
    distances: tuple[float, ...]  # original distances, frozen for the run
    degrees: tuple[float, ...]

    def __len__(self):
        return len(self.indices)

    def entries(self):
        return zip(self.indices, self.distances, self.degrees)


def default_k(N: int) -> int:
    return max(1, min(10, N - 1))


def check_k(k, N):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise ConfigError(f"k must be an integer, got {k!r}")
    if k < 1 or k >= N:
        raise ConfigError(f"k must satisfy 1 <= k <= N-1 = {N - 1}, got {k}")


def knn_sets(d0: np.ndarray, k: int) -> np.ndarray:
    """Indices of the ``k`` nearest other points for each row of ``d0``.

    Returns an (N, k) int array ordered by distance; equal distances keep
    the lower index first.
    """
    d0 = np.asarray(d0, dtype=np.float64)
    N = d0.shape[0]
    check_k(k, N)
    masked = d0.copy()
    np.fill_diagonal(masked, np.inf)
    order = np.argsort(masked, axis=1, kind="stable")
    return order[:, :k]


def neighbor_degrees(distances, owner=None) -> np.ndarray:
    """Neighbor degree ``min(distances) / d`` for each distance.

    Zero distances (coincident points) cannot enter the ratio. They get
    degree 1.0, and the smallest positive distance stands in for the
    minimum. A :class:`DuplicatePointWarning` is emitted.
    """
    d = np.asarray(distances, dtype=np.float64)
    if d.ndim != 1 or d.size == 0:
        raise ConfigError("neighbor distance list must be a nonempty 1-D sequence")
    if np.any(d < 0) or not np.all(np.isfinite(d)):
        raise ConfigError("neighbor distances must be finite and nonnegative")
    zero = d == 0.0
    if not zero.any():
        return d.min() / d
    who = "" if owner is None else f" of point {owner}"
    warnings.warn(
        f"{int(zero.sum())} neighbor(s){who} coincide with it; assigning degree 1.0",
        DuplicatePointWarning,
        stacklevel=2,
    )
    out = np.ones_like(d)
    if not zero.all():
        positive = d[~zero]
        out[~zero] = positive.min() / positive
    return out


def build_soft_neighborhoods(d0: np.ndarray, k: int) -> list[SoftNeighborhood]:
    d0 = np.asarray(d0, dtype=np.float64)
    idx = knn_sets(d0, k)
    hoods = []
    for i, row in enumerate(idx):
        dist = d0[i, row]
        nd = neighbor_degrees(dist, owner=i)
        hoods.append(
            SoftNeighborhood(
                owner=i,
                indices=tuple(int(j) for j in row),
                distances=tuple(float(x) for x in dist),
                degrees=tuple(float(x) for x in nd),
            )
        )
    return hoods


def dense_weights(hoods, N):
    """(is_nbr, nd) N x N arrays in the layout the field kernels expect."""
    is_nbr = np.zeros((N, N), dtype=np.uint8)
    nd = np.zeros((N, N), dtype=np.float64)
    for h in hoods:
        idx = list(h.indices)
        is_nbr[h.owner, idx] = 1
        nd[h.owner, idx] = h.degrees
    return is_nbr, nd


def edge_rows(hoods):
    """``(i, j, ND_ij, d0_ij)`` for every directed neighborhood entry."""
    return [(h.owner, j, nd, d) for h in hoods for j, d, nd in h.entries()]


def format_edges(hoods) -> str:
    lines = ["i,j,nd,d0"]
    lines += [f"{i},{j},{nd!r},{d!r}" for i, j, nd, d in edge_rows(hoods)]
    return "\n".join(lines) + "\n"


def read_edges(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("i,"):
                continue
            i, j, nd, d = line.split(",")
            rows.append((int(i), int(j), float(nd), float(d)))
    return rows
