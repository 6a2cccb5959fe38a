"""Time the compiled and pure-Python RK4 kernels on the full microburst run.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--dt DT]
"""

import argparse
import timeit

import numpy as np

from pitchlqr import NAVION, LqrWeights, MicroburstProfile, SimConfig, assemble_model
from pitchlqr import _backend, simulate, solve_care


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--dt", type=float, default=0.001)
    parser.add_argument("--t-final", type=float, default=100.0)
    args = parser.parse_args(argv)

    model = assemble_model(NAVION)
    K = solve_care(model.A, model.B, LqrWeights.diagonal()).K
    cfg = SimConfig(dt=args.dt, t_final=args.t_final, gain=K)
    profile = MicroburstProfile()
    kernels = _backend.available_kernels()
    original = _backend.rk4_lti
    results = {}
    try:
        for name, kernel in sorted(kernels.items()):
            _backend.rk4_lti = kernel
            runs = timeit.repeat(lambda: simulate(model, profile, cfg), number=1,
                                 repeat=args.repeat)
            results[name] = (min(runs), simulate(model, profile, cfg).states)
    finally:
        _backend.rk4_lti = original

    steps = len(cfg.time_grid()) - 1
    print(f"{steps} RK4 steps, best of {args.repeat}")
    for name, (best, _) in results.items():
        print(f"  {name:>7}: {best * 1e3:9.2f} ms  ({best / steps * 1e9:7.1f} ns/step)")
    if len(results) == 2:
        (t_cy, x_cy), (t_py, x_py) = results["cython"], results["python"]
        print(f"  speedup: {t_py / t_cy:.1f}x, max |state difference| "
              f"{np.abs(x_cy - x_py).max():.2e}")
    else:
        print("  compiled kernel unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
