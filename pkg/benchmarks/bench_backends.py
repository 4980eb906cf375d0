"""Compare the numba and numpy kernels on the published 32 x 128 problem.

    python benchmarks/bench_backends.py [--iterations 2000] [--repeat 200]

Reports per-call time of the objective+gradient kernel and wall time of a
fixed-step minimization, plus the maximum difference between the backends'
results.
"""
import argparse
import time

import numpy as np

from cwfcauchy import (
    SIN2, MinimizerConfig, NoiseSpec, apply_noise, extract_flux, initial_guess, make_context,
    make_grid, minimize, paper_problem, solve_forward,
)
from cwfcauchy import kernels


def time_kernel(ctx, u, repeat):
    ctx.value_and_gradient(u)  # compile / warm caches
    t0 = time.perf_counter()
    for _ in range(repeat):
        ctx.value_and_gradient(u)
    return (time.perf_counter() - t0) / repeat


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iterations", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()

    grid = make_grid(32, 128, 0.5)
    problem = paper_problem(10.0, SIN2)
    rows = apply_noise(extract_flux(solve_forward(problem, grid)), NoiseSpec(0.05, 0), grid.h)
    cfg = MinimizerConfig(step=1e-8, iterations=args.iterations, record_every=args.iterations)

    backends = ["numpy"] + (["numba"] if kernels.numba_backend is not None else [])
    finals = {}
    print(f"{'backend':8s} {'kernel/call':>12s} {'minimize':>10s}")
    for name in backends:
        ctx = make_context(grid, problem, 4.0, 0.00063, backend=name)
        start = initial_guess(ctx, rows)
        per_call = time_kernel(ctx, start.values, args.repeat)
        t0 = time.perf_counter()
        finals[name] = minimize(ctx, start, cfg).final.values
        wall = time.perf_counter() - t0
        print(f"{name:8s} {per_call * 1e6:10.1f}us {wall:9.2f}s")
    if len(finals) == 2:
        diff = np.max(np.abs(finals["numba"] - finals["numpy"]))
        print(f"max |numba - numpy| after {args.iterations} iterations: {diff:.3e}")


if __name__ == "__main__":
    main()
