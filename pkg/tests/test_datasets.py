import numpy as np
import pytest

from softflat import (
    ConfigError,
    IngestionError,
    SurfaceSpec,
    generate,
    generate_gaussian_surface,
    generate_half_cylinder,
    load_csv,
    pairwise_distances,
    save_csv,
)
from softflat.datasets import gaussian_height


def test_tiny_cylinder():
    c = generate_half_cylinder(SurfaceSpec(grid_u=2, grid_v=2, radius=1.0, height=1.0))
    np.testing.assert_allclose(c.points, [[1, 0, 0], [-1, 0, 0], [1, 0, 1], [-1, 0, 1]], atol=1e-15)


def test_default_cylinder():
    c = generate_half_cylinder()
    assert c.points.shape == (120, 3)
    r2 = c.points[:, 0] ** 2 + c.points[:, 1] ** 2
    assert np.abs(r2 - 1.0).max() <= 1e-12
    assert c.points[:, 1].min() >= -1e-15  # theta in [0, pi]
    assert c.points[:, 2].max() == 2.5


def test_unrolled_width():
    spec = SurfaceSpec(grid_u=200, grid_v=2)
    c = generate_half_cylinder(spec)
    row = c.points[:200]
    arc = np.linalg.norm(np.diff(row, axis=0), axis=1).sum()
    assert arc == pytest.approx(np.pi * spec.radius, rel=1e-4)


def test_gaussian_peak_and_formula():
    spec = SurfaceSpec(kind="gaussian_surface", grid_u=11, grid_v=11, amplitude=3.0)
    g = generate_gaussian_surface(spec)
    centre = g.points[60]
    assert centre[:2].tolist() == [0.0, 0.0] and centre[2] == 3.0
    x, y, z = g.points.T
    assert np.abs(z - 3.0 * np.exp(-(x**2 + y**2) / (2 * 6.0))).max() <= 1e-12


def test_smaller_variance_is_sharper():
    for x, y in [(1.0, 0.0), (2.0, -3.0), (0.3, 0.3)]:
        assert gaussian_height(x, y, 2.0, 1.0) < gaussian_height(x, y, 6.0, 1.0)


def test_default_gaussian_count():
    assert generate_gaussian_surface().N == 120
    assert generate(SurfaceSpec(kind="gaussian_surface", variance=2.0)).N == 120


def test_jitter_deterministic():
    spec = SurfaceSpec(jitter=0.2, seed=7)
    a, b = generate(spec), generate(spec)
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, generate(SurfaceSpec()).points)
    assert not np.array_equal(a.points, generate(SurfaceSpec(jitter=0.2, seed=8)).points)


@pytest.mark.parametrize(
    "bad",
    [dict(kind="torus"), dict(grid_u=0), dict(radius=-1.0), dict(variance=0.0), dict(jitter=0.2), dict(jitter=0.7, seed=1)],
)
def test_invalid_spec(bad):
    with pytest.raises(ConfigError):
        generate(SurfaceSpec(**bad))


def test_load_two_rows(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("0,0\n3,4\n")
    c = load_csv(p)
    assert c.points.shape == (2, 2)
    assert pairwise_distances(c)[0, 1] == 5.0


def test_header_skipped(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("x,y,z\n1,2,3\n4,5,6\n")
    assert load_csv(p).points.tolist() == [[1, 2, 3], [4, 5, 6]]


@pytest.mark.parametrize(
    "text, line",
    [
        ("1,2\n3\n", 2),
        ("1,2\n3,abc\n", 2),
        ("x,y\n1,2\n3,4,5\n", 3),
        ("1,2\n4,nan\n", 2),
        ("", None),
        ("x,y\n", None),
    ],
)
def test_ingestion_errors(tmp_path, text, line):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(IngestionError) as err:
        load_csv(p)
    assert err.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(IngestionError):
        load_csv(tmp_path / "nope.csv")


def test_roundtrip(tmp_path, rng):
    X = rng.normal(size=(9, 4)) * 10 ** rng.uniform(-5, 5, size=(9, 4))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    save_csv(X, a)
    save_csv(load_csv(a), b)
    back = load_csv(b).points
    np.testing.assert_allclose(back, X, rtol=1e-12)
    assert a.read_text() == b.read_text()
