"""Exit criteria for the package, one test (or group) per criterion.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion
in the terminal summary.
"""
import time

import numpy as np
import pytest

import oracles
from softflat import (
    DeformConfig,
    DeformState,
    SurfaceSpec,
    build_soft_neighborhoods,
    component_ratio_trace,
    deform_step,
    elastic_vector,
    estimate_dimension,
    generate,
    generate_gaussian_surface,
    generate_half_cylinder,
    neighbor_degrees,
    neighbor_distortion,
    pairwise_distances,
    reduce,
    repel_vector,
    schedule_alphas,
    total_field,
)
from softflat.cli import main

PAPER_DEFAULTS = dict(k=10, period=60, alpha2=0.1, alpha1_amplitude=1e-4, max_steps=600)


@pytest.fixture(scope="module")
def cylinder_run():
    t0 = time.perf_counter()
    red = reduce(generate_half_cylinder(), DeformConfig(**PAPER_DEFAULTS))
    return red, time.perf_counter() - t0


@pytest.mark.criterion(1, "default half cylinder flattens: ratio3 < 0.05, dimension 2, < 10 s")
def test_cylinder_flattening(cylinder_run):
    red, seconds = cylinder_run
    ratios = red.embedding.ratios
    print(f"cylinder ratios {ratios}, stop {red.deformation.stop_reason}, {seconds:.2f}s")
    assert ratios[2] < 0.05
    assert red.intrinsic_dimension == 2
    assert seconds < 10.0


@pytest.mark.criterion(2, "Gaussian surfaces (variance 6 and 2) reduce to dimension 2")
@pytest.mark.parametrize("variance", [6.0, 2.0])
def test_gaussian_dimension(variance):
    cloud = generate_gaussian_surface(SurfaceSpec(kind="gaussian_surface", variance=variance))
    t0 = time.perf_counter()
    red = reduce(cloud, DeformConfig(**PAPER_DEFAULTS))
    assert time.perf_counter() - t0 < 10.0
    assert red.intrinsic_dimension == 2


@pytest.mark.criterion(3, "variance-6 ratio trace: top-2 share rises, ratios 3-6 fall")
def test_component_ratio_trend():
    cloud = generate_gaussian_surface(SurfaceSpec(kind="gaussian_surface", variance=6.0))
    red = reduce(cloud, DeformConfig(**PAPER_DEFAULTS, trace_pca_every=10))
    series = component_ratio_trace(red.deformation.trace, 6)
    first, last = series[0], series[-1]
    print(f"first {first}\nlast  {last}")
    assert last[0] + last[1] > first[0] + first[1]
    assert last[0] > first[0]
    assert last[2] < first[2]
    # the surface lives in R^3: ratios 4-6 are identically zero and cannot drop further
    assert np.all(last[3:] <= first[3:])


@pytest.mark.criterion(4, "median neighbor distance distortion <= 0.25 after cylinder run")
def test_neighbor_distance_preservation(cylinder_run):
    red, _ = cylinder_run
    med = float(np.median(neighbor_distortion(red.deformation)))
    print(f"median relative neighbor distortion {med:.4f}")
    assert med <= 0.25


@pytest.mark.criterion(5, "points in the z=0 plane stay there for 120 steps (|z| <= 1e-10)")
def test_hyperplane_invariant(rng):
    P = np.column_stack([rng.uniform(-1, 1, size=(50, 2)), np.zeros(50)])
    cfg = DeformConfig().resolved(50)
    state = DeformState(P, cfg.k)
    for _ in range(120):
        deform_step(state, cfg)
        assert np.abs(state.points[:, 2]).max() <= 1e-10


@pytest.mark.criterion(6, "total_field equals an independent double loop on 20 random clouds (rel 1e-12)")
def test_field_oracle(backend):
    rng = np.random.default_rng(6)
    for _ in range(20):
        N, n = int(rng.integers(2, 31)), int(rng.integers(1, 6))
        k = int(rng.integers(1, N))
        P = rng.normal(size=(N, n)) * rng.uniform(0.1, 10)
        state = DeformState(P, k)
        state.points = P + 0.1 * rng.normal(size=P.shape)
        a1, a2 = rng.uniform(-1e-2, 1e-2), rng.uniform(0, 0.5)
        nb, dg, og = oracles.soft_neighborhoods(P.tolist(), k)
        expected = np.array(oracles.field(state.points.tolist(), nb, dg, og, a1, a2))
        np.testing.assert_allclose(total_field(state, a1, a2), expected, rtol=1e-12, atol=0)


@pytest.mark.criterion(7, "jittered cylinder: some farthest-neighbor degree < 0.5, still dimension 2")
def test_short_circuit_robustness():
    cloud = generate(SurfaceSpec(kind="half_cylinder", jitter=0.2, seed=2024))
    hoods = build_soft_neighborhoods(pairwise_distances(cloud), 10)
    farthest = [min(h.degrees) for h in hoods]
    assert min(farthest) < 0.5
    red = reduce(cloud, DeformConfig(**PAPER_DEFAULTS))
    print(f"jittered ratios {red.embedding.ratios}")
    assert red.intrinsic_dimension == 2


@pytest.mark.criterion(8, "reduce twice with the same input and flags gives byte-identical files")
def test_cli_determinism(tmp_path):
    data = tmp_path / "cyl.csv"
    assert main(["generate", "--kind", "half-cylinder", "--out", str(data)]) == 0
    for prefix in ("a", "b"):
        assert main(["reduce", str(data), "--out", str(tmp_path / prefix), "--trace-pca-every", "10"]) == 0
    for ext in ("embedding.csv", "edges.csv", "trace.csv"):
        assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()


@pytest.mark.criterion(9, "formula unit values: degrees, repulsion, elastic rest length, schedule")
def test_formula_units():
    assert neighbor_degrees([1.0, 2.0, 4.0]).tolist() == [1.0, 0.5, 0.25]
    assert neighbor_degrees([2.0, 2.0, 2.0]).tolist() == [1.0, 1.0, 1.0]
    assert neighbor_degrees([1.0, 100.0]).tolist() == [1.0, 0.01]
    assert repel_vector([2.0, 0.0], [0.0, 0.0], 2.0).tolist() == [1.0, 0.0]
    assert repel_vector([1.0, 0.0], [0.0, 0.0], 1.0, nd=1.0).tolist() == [0.0, 0.0]
    assert repel_vector([1.0, 0.0], [0.0, 0.0], 1.0, nd=0.5).tolist() == [0.5, 0.0]
    assert elastic_vector([1.0, 2.0], [0.0, 0.0], 5**0.5, 5**0.5, nd=0.3).tolist() == [0.0, 0.0]
    assert elastic_vector([1.0, 0.0], [0.0, 0.0], 1.0, 2.0, nd=1.0).tolist() == [1.0, 0.0]
    assert elastic_vector([1.0, 0.0], [0.0, 0.0], 1.0, 2.0).tolist() == [0.0, 0.0]
    unclamped = DeformConfig(clamp_alpha1_nonnegative=False)
    assert schedule_alphas(0, unclamped) == (1e-4, 0.1)
    assert schedule_alphas(30, unclamped) == (-1e-4, 0.1)
    assert schedule_alphas(0, DeformConfig()) == (1e-4, 0.1)
