"""Point clouds and Euclidean distance matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class PointCloud:
    """N sample points in R^n, stored as an (N, n) float64 array.

    Row ``i`` always names the same sample for the life of a run.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ConfigError(f"point cloud needs shape (N>=1, n>=1), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ConfigError("point cloud contains non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def N(self) -> int:
        return self.points.shape[0]

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.N

    def with_points(self, points) -> "PointCloud":
        return PointCloud(points)

    def duplicate_pairs(self) -> list[tuple[int, int]]:
        """Index pairs ``(i, j)``, ``i < j``, of coincident points."""
        d = pairwise_distances(self)
        i, j = np.nonzero(np.triu(d == 0.0, k=1))
        return list(zip(i.tolist(), j.tolist()))


def as_points(cloud) -> np.ndarray:
    if isinstance(cloud, PointCloud):
        return cloud.points
    return PointCloud(cloud).points


def pairwise_distances(cloud) -> np.ndarray:
    """Full symmetric (N, N) Euclidean distance matrix with an exact zero diagonal."""
    from ._backend import kernels

    return kernels.pairwise_distances(np.ascontiguousarray(as_points(cloud)))
