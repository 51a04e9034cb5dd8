"""Synthetic test surfaces and CSV ingestion."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import ConfigError, IngestionError
from .geometry import PointCloud, as_points

KINDS = ("half_cylinder", "gaussian_surface")


@dataclass(frozen=True)
class SurfaceSpec:
    """Grid-sampled surface in R^3.

    ``grid_u`` runs along the angle (cylinder) or x (Gaussian) and is the
    fast index; ``grid_v`` runs along height or y. ``jitter`` perturbs each
    grid parameter uniformly by up to that fraction of its spacing.
    """

    kind: str = "half_cylinder"
    grid_u: int = 12
    grid_v: int = 10
    radius: float = 1.0
    height: float = 2.5
    variance: float = 6.0
    amplitude: float = 3.0
    half_width: float = 5.0
    jitter: float = 0.0
    seed: Optional[int] = None

    def validate(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown surface kind {self.kind!r}; expected one of {KINDS}")
        for name in ("grid_u", "grid_v"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        for name in ("radius", "height", "variance", "amplitude", "half_width"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0")
        if not 0 <= self.jitter < 0.5:
            raise ConfigError(f"jitter must be in [0, 0.5), got {self.jitter}")
        if self.jitter and self.seed is None:
            raise ConfigError("jittered surfaces need an explicit seed")
        return self

    @property
    def N(self):
        return self.grid_u * self.grid_v


def _grid(lo_u, hi_u, lo_v, hi_v, spec):
    u = np.linspace(lo_u, hi_u, spec.grid_u)
    v = np.linspace(lo_v, hi_v, spec.grid_v)
    U, V = np.meshgrid(u, v)  # u varies fastest in row-major order
    if spec.jitter:
        rng = np.random.default_rng(spec.seed)
        du = (hi_u - lo_u) / max(spec.grid_u - 1, 1)
        dv = (hi_v - lo_v) / max(spec.grid_v - 1, 1)
        U = U + rng.uniform(-spec.jitter, spec.jitter, U.shape) * du
        V = V + rng.uniform(-spec.jitter, spec.jitter, V.shape) * dv
    return U.ravel(), V.ravel()


def generate_half_cylinder(spec: SurfaceSpec = SurfaceSpec()) -> PointCloud:
    spec = replace(spec, kind="half_cylinder").validate()
    theta, h = _grid(0.0, np.pi, 0.0, spec.height, spec)
    r = spec.radius
    return PointCloud(np.column_stack([r * np.cos(theta), r * np.sin(theta), h]))


def gaussian_height(x, y, variance, amplitude):
    return amplitude * np.exp(-(x * x + y * y) / (2.0 * variance))


def generate_gaussian_surface(spec: SurfaceSpec = SurfaceSpec(kind="gaussian_surface")) -> PointCloud:
    spec = replace(spec, kind="gaussian_surface").validate()
    w = spec.half_width
    x, y = _grid(-w, w, -w, w, spec)
    return PointCloud(np.column_stack([x, y, gaussian_height(x, y, spec.variance, spec.amplitude)]))


def generate(spec: SurfaceSpec) -> PointCloud:
    spec.validate()
    if spec.kind == "half_cylinder":
        return generate_half_cylinder(spec)
    return generate_gaussian_surface(spec)


def _is_number(cell):
    try:
        float(cell)
    except ValueError:
        return False
    return True


def parse_csv(text: str) -> PointCloud:
    rows = []
    width = None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        if not rows and width is None and not all(_is_number(c) for c in cells):
            width = len(cells)  # header row
            continue
        if width is None:
            width = len(cells)
        if len(cells) != width:
            raise IngestionError(f"expected {width} columns, found {len(cells)}", line=lineno)
        try:
            vals = [float(c) for c in cells]
        except ValueError:
            bad = next(c for c in cells if not _is_number(c))
            raise IngestionError(f"non-numeric cell {bad!r}", line=lineno) from None
        if not all(np.isfinite(vals)):
            raise IngestionError("non-finite value", line=lineno)
        rows.append(vals)
    if not rows:
        raise IngestionError("no data rows", line=None)
    return PointCloud(np.array(rows, dtype=np.float64))


def load_csv(path) -> PointCloud:
    """One point per row; a first row that is not all numbers is taken as a header."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from None
    return parse_csv(text)


def format_csv(cloud, header=None) -> str:
    pts = as_points(cloud)
    lines = [] if header is None else [",".join(header)]
    lines += [",".join(repr(float(x)) for x in row) for row in pts]
    return "\n".join(lines) + "\n"


def save_csv(cloud, path, header=None):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(cloud, header))
