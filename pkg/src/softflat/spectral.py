"""PCA readout of a (flattened) point cloud."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateCloudWarning
from .geometry import as_points

DEFAULT_RATIO_THRESHOLD = 0.05


@dataclass(frozen=True)
class PcaResult:
    components: np.ndarray  # (n, n); row m is the m-th principal direction
    variances: np.ndarray  # population variances, descending
    ratios: np.ndarray
    mean: np.ndarray


@dataclass(frozen=True)
class EmbeddingResult:
    intrinsic_dimension: int
    coordinates: np.ndarray  # (N, intrinsic_dimension)
    edges: list  # (i, j, d0_ij) from the original neighborhoods
    ratios: np.ndarray


def _fix_signs(vecs):
    # largest-magnitude entry of each component made positive; argmax takes the first tie
    for m in range(vecs.shape[0]):
        lead = int(np.argmax(np.abs(vecs[m])))
        if vecs[m, lead] < 0:
            vecs[m] = -vecs[m]
    return vecs


def pca(cloud) -> PcaResult:
    """Principal directions and variances of ``cloud`` (covariance divisor N).

    Eigenvector signs are fixed so the largest-magnitude entry of every
    component is positive. A cloud with zero variance gets all-zero ratios
    and a :class:`DegenerateCloudWarning`.
    """
    X = as_points(cloud)
    N, n = X.shape
    if N < 2:
        raise ConfigError("PCA needs at least 2 points")
    mean = X.mean(axis=0)
    Y = X - mean
    cov = (Y.T @ Y) / N
    w, v = np.linalg.eigh(cov)
    order = np.argsort(-w, kind="stable")
    variances = np.clip(w[order], 0.0, None)
    comps = _fix_signs(np.ascontiguousarray(v[:, order].T))
    total = variances.sum()
    if total > 0:
        ratios = variances / total
    else:
        warnings.warn("all points coincide; PCA ratios set to 0", DegenerateCloudWarning, stacklevel=2)
        ratios = np.zeros(n)
    return PcaResult(comps, variances, ratios, mean)


def estimate_dimension(result: PcaResult, ratio_threshold: float = DEFAULT_RATIO_THRESHOLD) -> int:
    """Number of components whose variance ratio reaches ``ratio_threshold`` (at least 1)."""
    if not 0 < ratio_threshold < 1:
        raise ConfigError(f"ratio threshold must lie in (0, 1), got {ratio_threshold}")
    return max(1, int(np.count_nonzero(np.asarray(result.ratios) >= ratio_threshold)))


def project(cloud, result: PcaResult, dim: int) -> np.ndarray:
    X = as_points(cloud)
    n = X.shape[1]
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or not 1 <= dim <= n:
        raise ConfigError(f"projection dimension must be in [1, {n}], got {dim!r}")
    return (X - result.mean) @ result.components[:dim].T


def component_ratio_trace(trace, top_m: int = 6) -> np.ndarray:
    """(records, top_m) array of leading PCA ratios over a deformation trace."""
    rows = [r.ratios for r in trace if r.ratios is not None]
    out = np.zeros((len(rows), max(top_m, 0)))
    for t, ratios in enumerate(rows):
        vals = list(ratios)[:top_m]
        out[t, : len(vals)] = vals
    return out


def format_embedding(coords) -> str:
    coords = np.asarray(coords)
    d = coords.shape[1]
    lines = ["index," + ",".join(f"x{m + 1}" for m in range(d))]
    for i, row in enumerate(coords):
        lines.append(f"{i}," + ",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"
