"""Benchmark the compiled kernels against the pure-NumPy fallback.

Run as `python benchmarks/bench_kernels.py`; pass --repeat to change the
timing loop count.
"""

import argparse
import math
import time

import numpy as np

from specmoll import (DegreePolicy, LocalizerConfig, ThetaPolicy,
                      choose_params, compute_coefficients, get_signal,
                      mollify_spectral, spectral_floor)
from specmoll._backend import available_backends


def timeit(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(kernels, repeat):
    rng = np.random.default_rng(3)
    y = rng.uniform(-2, 2, 1_000_000)
    coeffs = rng.normal(size=257) + 1j * rng.normal(size=257)
    nodes = rng.uniform(0, 2 * math.pi, 8001)
    rows = {
        "psi_many (1e6 pts)": lambda: kernels.psi_many(y, 0.5, 39.0, 10.0),
        "dirichlet_many (1e6 pts)": lambda: kernels.dirichlet_many(y, 39.0),
        "projection_eval (8001 pts, N=128)":
            lambda: kernels.projection_eval(coeffs, nodes),
    }
    return {name: timeit(fn, repeat) for name, fn in rows.items()}


def bench_reconstruction(backend_module, repeat):
    import specmoll._backend as backend

    saved = backend.kernels
    backend.kernels = backend_module
    try:
        f1 = get_signal("f1")
        c = compute_coefficients(f1, 128)
        cfg = LocalizerConfig()
        policy = ThetaPolicy(mode="custom", floor=spectral_floor)
        xs = np.linspace(0.3, math.pi - 0.3, 40)

        def run():
            for x in xs:
                spec = choose_params(float(x), 128, f1, DegreePolicy(), policy)
                mollify_spectral(c, float(x), spec, cfg)

        return timeit(run, repeat)
    finally:
        backend.kernels = saved


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    names = [b.BACKEND for b in backends]
    print(f"backends found: {', '.join(names)}\n")

    tables = {b.BACKEND: bench_backend(b, args.repeat) for b in backends}
    rows = list(next(iter(tables.values())))
    width = max(len(r) for r in rows) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{n:>12}" for n in names)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for row in rows:
        line = f"{row:<{width}}"
        vals = [tables[n][row] for n in names]
        line += "".join(f"{v * 1e3:>10.2f}ms" for v in vals)
        if len(vals) == 2:
            line += f"{vals[1] / vals[0]:>9.1f}x"
        print(line)

    print()
    times = [bench_reconstruction(b, max(1, args.repeat // 2))
             for b in backends]
    line = f"{'40-point reconstruction (N=128)':<{width}}"
    line += "".join(f"{v * 1e3:>10.0f}ms" for v in times)
    if len(times) == 2:
        line += f"{times[1] / times[0]:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
