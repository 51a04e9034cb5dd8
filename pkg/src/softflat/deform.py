"""The deforming field and the synchronous deformation loop.

Each step, every point ``p_i`` moves by

    V_i = alpha1 * sum_j repel(i, j) + alpha2 * sum_j elastic(i, j)

computed from one snapshot of all positions. ``alpha1`` follows a
cosine schedule with period ``T``. The step count is capped and the run
stops early once the summed displacement falls below ``epsilon``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from typing import Optional

import numpy as np

from . import _backend
from .errors import ConfigError, DivergenceError
from .geometry import PointCloud, as_points, pairwise_distances
from .neighborhood import build_soft_neighborhoods, check_k, default_k, dense_weights

N_TRACE_RATIOS = 6


@dataclass(frozen=True)
class DeformConfig:
    k: Optional[int] = None  # None -> min(10, N-1)
    alpha1_amplitude: float = 1e-4
    period: int = 60
    alpha2: float = 0.1
    # Negative alpha1 turns repulsion into attraction and cancels the
    # flattening over each period; see README "Coefficient schedule".
    clamp_alpha1_nonnegative: bool = True
    epsilon: Optional[float] = None  # None -> 1e-6 * N
    max_steps: int = 600
    trace_pca_every: int = 0

    def validate(self):
        def _int(name, lo):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < lo:
                raise ConfigError(f"{name} must be an integer >= {lo}, got {v!r}")

        _int("period", 1)
        _int("max_steps", 1)
        _int("trace_pca_every", 0)
        if self.k is not None:
            _int("k", 1)
        for name in ("alpha1_amplitude", "alpha2"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if self.alpha2 < 0:
            raise ConfigError(f"alpha2 must be >= 0, got {self.alpha2}")
        if self.epsilon is not None and not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise ConfigError(f"epsilon must be finite and >= 0, got {self.epsilon}")
        return self

    def resolved(self, N: int) -> "DeformConfig":
        """Copy with ``k`` and ``epsilon`` defaults filled in for ``N`` points."""
        self.validate()
        k = default_k(N) if self.k is None else self.k
        eps = 1e-6 * N if self.epsilon is None else self.epsilon
        return replace(self, k=k, epsilon=eps)

    def as_dict(self):
        return asdict(self)


def repel_vector(pi, pj, d_ij, nd=None):
    """Repulsion on ``p_i`` from ``p_j``.

    Unit length for a non-neighbor, ``1 - nd`` for a neighbor with degree
    ``nd``. Coincident points contribute nothing.
    """
    pi = np.asarray(pi, dtype=np.float64)
    pj = np.asarray(pj, dtype=np.float64)
    if d_ij == 0:
        return np.zeros_like(pi)
    w = 1.0 if nd is None else 1.0 - nd
    return (w / d_ij) * (pi - pj)


def elastic_vector(pi, pj, d_ij, d0_ij, nd=None):
    """Spring term toward the original distance ``d0_ij``; zero for non-neighbors."""
    pi = np.asarray(pi, dtype=np.float64)
    pj = np.asarray(pj, dtype=np.float64)
    if nd is None or d_ij == 0:
        return np.zeros_like(pi)
    return ((nd * (d0_ij - d_ij)) / d_ij) * (pi - pj)


def schedule_alphas(C: int, config: DeformConfig) -> tuple[float, float]:
    if C < 0:
        raise ConfigError(f"step count must be >= 0, got {C}")
    T = config.period
    a1 = config.alpha1_amplitude * math.cos(2.0 * math.pi * (C % T) / T)
    if config.clamp_alpha1_nonnegative:
        a1 = max(a1, 0.0)
    return a1, config.alpha2


class DeformState:
    """Mutable run state: current positions plus the frozen neighborhood data."""

    def __init__(self, cloud, k):
        pts = as_points(cloud)
        self.points = np.array(pts, dtype=np.float64, order="C")
        N = self.points.shape[0]
        self.d0 = pairwise_distances(self.points)
        if N >= 2:
            check_k(k, N)
            self.neighborhoods = build_soft_neighborhoods(self.d0, k)
        else:
            self.neighborhoods = []
        self.is_nbr, self.nd = dense_weights(self.neighborhoods, N)
        self.step = 0
        self.last_total_displacement = 0.0

    @property
    def cloud(self) -> PointCloud:
        return PointCloud(self.points)

    @property
    def N(self):
        return self.points.shape[0]


def field_from_arrays(points, is_nbr, nd, d0, alpha1, alpha2):
    """Deforming vector for every point from one snapshot of ``points``."""
    return _backend.kernels.total_field(
        np.ascontiguousarray(points, dtype=np.float64),
        np.ascontiguousarray(is_nbr, dtype=np.uint8),
        np.ascontiguousarray(nd, dtype=np.float64),
        np.ascontiguousarray(d0, dtype=np.float64),
        float(alpha1),
        float(alpha2),
        _backend.field_threads(),
    )


def total_field(state: DeformState, alpha1, alpha2) -> np.ndarray:
    return field_from_arrays(state.points, state.is_nbr, state.nd, state.d0, alpha1, alpha2)


@dataclass
class StepRecord:
    step: int  # step count after this step was applied
    alpha1: float
    total_displacement: float
    ratios: Optional[tuple[float, ...]] = None


@dataclass
class DeformTrace:
    records: list[StepRecord] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def pca_records(self):
        return [r for r in self.records if r.ratios is not None]

    def format(self) -> str:
        header = "C,alpha1,total_displacement"
        if self.pca_records():
            header += "," + ",".join(f"ratio{m + 1}" for m in range(N_TRACE_RATIOS))
        lines = [header]
        for r in self.records:
            row = f"{r.step},{r.alpha1!r},{r.total_displacement!r}"
            if r.ratios is not None:
                row += "," + ",".join(repr(float(x)) for x in r.ratios)
            lines.append(row)
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "DeformTrace":
        records = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("C,"):
                continue
            parts = line.split(",")
            try:
                if len(parts) not in (3, 3 + N_TRACE_RATIOS):
                    raise ValueError(f"expected 3 or {3 + N_TRACE_RATIOS} fields")
                ratios = tuple(float(x) for x in parts[3:]) or None
                records.append(StepRecord(int(parts[0]), float(parts[1]), float(parts[2]), ratios))
            except ValueError as exc:
                raise ValueError(f"trace line {lineno}: {exc}") from None
        return cls(records)


@dataclass
class DeformResult:
    cloud: PointCloud
    trace: DeformTrace
    stop_reason: str  # "epsilon" or "max_steps"
    steps: int
    state: DeformState


def deform_step(state: DeformState, config: DeformConfig) -> StepRecord:
    """Apply one synchronous update in place and return its record."""
    a1, a2 = schedule_alphas(state.step, config)
    V = total_field(state, a1, a2)
    with np.errstate(over="ignore", invalid="ignore"):
        new = state.points + V
        total = float(np.sqrt((V * V).sum(axis=1)).sum())
    if not (np.all(np.isfinite(new)) and math.isfinite(total)):
        raise DivergenceError(state.step + 1)
    state.points = new
    state.step += 1
    state.last_total_displacement = total
    return StepRecord(state.step, a1, total)


def _trace_ratios(points):
    from .spectral import pca

    r = pca(points).ratios[:N_TRACE_RATIOS]
    return tuple(float(x) for x in r) + (0.0,) * (N_TRACE_RATIOS - len(r))


def run_deformation(cloud, config: DeformConfig = DeformConfig(), callback=None) -> DeformResult:
    """Deform ``cloud`` until the displacement sum drops below epsilon or the step cap.

    ``callback(state, record)``, if given, is called after every step.
    """
    pts = as_points(cloud)
    cfg = config.resolved(pts.shape[0])
    state = DeformState(pts, cfg.k)
    trace = DeformTrace()
    every = cfg.trace_pca_every
    while True:
        rec = deform_step(state, cfg)
        if rec.total_displacement < cfg.epsilon:
            reason = "epsilon"
        elif state.step >= cfg.max_steps:
            reason = "max_steps"
        else:
            reason = None
        if every and state.N >= 2 and (state.step % every == 0 or reason):
            rec.ratios = _trace_ratios(state.points)
        trace.records.append(rec)
        if callback is not None:
            callback(state, rec)
        if reason:
            return DeformResult(state.cloud, trace, reason, state.step, state)
