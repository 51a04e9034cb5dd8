"""Dimension reduction by flattening a sampled manifold.

Sample points push each other apart while springs hold original neighbor
distances. Once the cloud is flat, PCA reads off the intrinsic dimension
and the low-dimensional coordinates.
"""
from ._backend import BACKEND
from .datasets import (
    SurfaceSpec,
    generate,
    generate_gaussian_surface,
    generate_half_cylinder,
    load_csv,
    save_csv,
)
from .deform import (
    DeformConfig,
    DeformResult,
    DeformState,
    DeformTrace,
    StepRecord,
    deform_step,
    elastic_vector,
    repel_vector,
    run_deformation,
    schedule_alphas,
    total_field,
)
from .errors import (
    ConfigError,
    DegenerateCloudWarning,
    DivergenceError,
    DuplicatePointWarning,
    IngestionError,
    SoftflatError,
)
from .geometry import PointCloud, pairwise_distances
from .neighborhood import SoftNeighborhood, build_soft_neighborhoods, knn_sets, neighbor_degrees
from .pipeline import Reduction, neighbor_distortion, reduce
from .spectral import (
    EmbeddingResult,
    PcaResult,
    component_ratio_trace,
    estimate_dimension,
    pca,
    project,
)

__version__ = "0.1.0"
