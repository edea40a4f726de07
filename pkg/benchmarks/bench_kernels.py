"""Compare the compiled and pure-Python radial integrators.

Run with ``python3 benchmarks/bench_kernels.py [--repeat R]``.  Each backend
integrates the same ground-state trajectory onto the default uniform grid, and
the script checks that both produce identical samples before timing them.
"""
import argparse
import math
import timeit

import numpy as np

from kirchhoff import PowerNonlinearity, shoot_state
from kirchhoff.kernels import compiled_integrate_radial, python_integrate_radial
from kirchhoff.shooting import DECAY_EPS, N_GRID, R_SERIES, default_r_max


def _case(N, m, p):
    model = PowerNonlinearity(m, p)
    xi = shoot_state(model, N).bracket[0]
    grid = np.linspace(0.0, default_r_max(model), N_GRID + 1)
    return model, xi, grid


def _call(kernel, N, model, xi, grid):
    out_v, out_dv = np.full(grid.size, np.nan), np.full(grid.size, np.nan)
    kernel(N, model.m, model.p, xi, float(grid[-1]), 1e-12, 1e-12 * xi * 1e-6, R_SERIES,
           0, DECAY_EPS, 0.5 / math.sqrt(model.m), grid, out_v, out_dv, False)
    return out_v, out_dv


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if compiled_integrate_radial is None:
        raise SystemExit("compiled kernel not built; run `pip install --no-build-isolation -e .`")
    print(f"{'case':<14}{'python [ms]':>14}{'compiled [ms]':>16}{'speedup':>10}")
    for N, m, p in ((3, 1.0, 3.0), (4, 1.0, 2.0), (5, 1.0, 2.0)):
        model, xi, grid = _case(N, m, p)
        a = _call(python_integrate_radial, N, model, xi, grid)
        b = _call(compiled_integrate_radial, N, model, xi, grid)
        assert all(np.array_equal(x, y, equal_nan=True) for x, y in zip(a, b))
        times = []
        for kernel in (python_integrate_radial, compiled_integrate_radial):
            t = min(timeit.repeat(lambda: _call(kernel, N, model, xi, grid),
                                  number=1, repeat=args.repeat))
            times.append(1e3 * t)
        print(f"N={N} p={p:<8g}{times[0]:>14.2f}{times[1]:>16.3f}{times[0] / times[1]:>9.1f}x")


if __name__ == "__main__":
    main()
