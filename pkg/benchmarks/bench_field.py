"""Compare the compiled and interpreted field kernels.

    python benchmarks/bench_field.py [--sizes 60 120 240] [--steps 50]

Prints seconds per field evaluation and the speedup for each cloud size,
then times a full default cylinder run with each backend.
"""
import argparse
import time

import numpy as np

from softflat import DeformConfig, DeformState, _backend, generate_half_cylinder, run_deformation


def time_field(mod, state, repeats):
    args = (state.points, state.is_nbr, state.nd, state.d0, 1e-4, 0.1)
    mod.total_field(*args, _backend.field_threads())
    t0 = time.perf_counter()
    for _ in range(repeats):
        mod.total_field(*args, _backend.field_threads())
    return (time.perf_counter() - t0) / repeats


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[60, 120, 240, 480])
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--steps", type=int, default=30)
    args = ap.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; only timing the python fallback")
    rng = np.random.default_rng(0)
    print(f"{'N':>6} " + " ".join(f"{name:>12}" for name in backends) + "  speedup")
    for N in args.sizes:
        state = DeformState(rng.normal(size=(N, args.dim)), min(10, N - 1))
        t = {name: time_field(mod, state, args.steps) for name, mod in backends.items()}
        speed = t["python"] / t["compiled"] if "compiled" in t else float("nan")
        print(f"{N:>6} " + " ".join(f"{t[name]:>11.2e}s" for name in backends) + f"  {speed:7.1f}x")

    cyl = generate_half_cylinder()
    for name, mod in backends.items():
        _backend.kernels = mod
        t0 = time.perf_counter()
        run_deformation(cyl, DeformConfig())
        print(f"default cylinder run (600 steps), {name}: {time.perf_counter() - t0:.3f}s")


if __name__ == "__main__":
    main()
