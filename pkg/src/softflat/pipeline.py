"""End-to-end reduction: deform the cloud, then read coordinates off PCA."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .deform import DeformConfig, DeformResult, run_deformation
from .neighborhood import edge_rows
from .spectral import (
    DEFAULT_RATIO_THRESHOLD,
    EmbeddingResult,
    PcaResult,
    estimate_dimension,
    pca,
    project,
)


@dataclass
class Reduction:
    embedding: EmbeddingResult
    deformation: DeformResult
    pca: PcaResult

    @property
    def intrinsic_dimension(self):
        return self.embedding.intrinsic_dimension


def reduce(cloud, config: DeformConfig = DeformConfig(), ratio_threshold=DEFAULT_RATIO_THRESHOLD,
           dim=None) -> Reduction:
    """Flatten ``cloud`` and project it onto its significant principal components.

    ``dim`` overrides the estimated dimension used for the coordinates; the
    estimate itself is still reported.
    """
    deformed = run_deformation(cloud, config)
    res = pca(deformed.cloud)
    est = estimate_dimension(res, ratio_threshold)
    coords = project(deformed.cloud, res, est if dim is None else dim)
    edges = [(i, j, d0) for i, j, _, d0 in edge_rows(deformed.state.neighborhoods)]
    emb = EmbeddingResult(est, coords, edges, np.array(res.ratios))
    return Reduction(emb, deformed, res)


def neighbor_distortion(deformed: DeformResult) -> np.ndarray:
    """``|d_ij - d0_ij| / d0_ij`` at the final positions, one value per neighborhood entry."""
    st = deformed.state
    vals = []
    for h in st.neighborhoods:
        for j, d0, _ in h.entries():
            if d0 > 0:
                d = float(np.linalg.norm(st.points[h.owner] - st.points[j]))
                vals.append(abs(d - d0) / d0)
    return np.array(vals)
