#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the raw Thomas solve, one fused step, a full integration-based
identification, and a full Newton identification on the manufactured
benchmark, then prints a speedup table. Run after `pip install -e .`:

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from invdiff._kernels import _core  # noqa: F401  (fails fast if not built)
from invdiff._kernels import pure
from invdiff.model import make_grid, manufactured_problem


def run_integration_with(kern, data):
    grid = data.grid
    N, M, h, tau = grid.N, grid.M, grid.h, grid.tau
    u = np.empty((M + 1, N + 1))
    p = np.empty(M + 1)
    u[0] = data.phi

    def rec(row, frow, k):
        num = (kern.weighted_dot(row, data.omega_xx, h)
               + kern.weighted_dot(frow, data.omega, h) - data.gprime[k])
        return num / data.g[k]

    p[0] = rec(u[0], data.f[0], 0)
    for k in range(M):
        kern.cn_step(u[k], data.f[k], data.f[k + 1], p[k], h, tau, u[k + 1])
        p[k + 1] = rec(u[k + 1], data.f[k + 1], k + 1)
    return u, p


def run_newton_with(kern, data, tol=1e-12, max_iter=50):
    grid = data.grid
    N, M, h, tau = grid.N, grid.M, grid.h, grid.tau
    u = np.empty((M + 1, N + 1))
    p = np.empty(M + 1)
    s = np.empty(N + 1)
    u[0] = data.phi
    p[0] = (kern.weighted_dot(u[0], data.omega_xx, h)
            + kern.weighted_dot(data.f[0], data.omega, h)
            - data.gprime[0]) / data.g[0]
    for k in range(M):
        pj = p[k]
        for _ in range(max_iter):
            kern.cn_step(u[k], data.f[k], data.f[k + 1], pj, h, tau, u[k + 1])
            F = kern.weighted_dot(u[k + 1], data.omega, h) - data.g[k + 1]
            if abs(F) < tol:
                break
            kern.sens_solve(u[k + 1], pj, h, tau, s)
            pj -= F / kern.weighted_dot(s, data.omega, h)
        p[k + 1] = pj
    return u, p


def bench(label, fn, repeat):
    best = min(timeit(fn) for _ in range(repeat))
    return label, best


def timeit(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    n = 999
    diag = rng.uniform(3.0, 5.0, n)
    off = rng.uniform(-1.0, 1.0, n - 1)
    rhs = rng.uniform(-1.0, 1.0, n)
    out = np.empty(n)

    grid = make_grid(1.0, 1.0, 100, 1600)
    data, _, _ = manufactured_problem(grid)

    cases = []
    for name, kern in (("compiled", _core), ("pure", pure)):
        cases.append(bench(f"{name:8s} thomas n={n} x200",
                           lambda k=kern: [k.thomas(off, diag, off, rhs, out)
                                           for _ in range(200)],
                           args.repeat))
        cases.append(bench(f"{name:8s} integration N=100 M=1600",
                           lambda k=kern: run_integration_with(k, data),
                           args.repeat))
        cases.append(bench(f"{name:8s} newton      N=100 M=1600",
                           lambda k=kern: run_newton_with(k, data),
                           args.repeat))

    print(f"{'case':40s} {'best (s)':>12s}")
    print("-" * 54)
    for label, best in cases:
        print(f"{label:40s} {best:12.6f}")
    print("-" * 54)
    for i in range(3):
        base = cases[i][1]
        slow = cases[i + 3][1]
        name = cases[i][0].split(maxsplit=1)[1]
        print(f"speedup {name:32s} {slow / base:10.1f}x")

    # same numbers from both backends
    uc, pc = run_integration_with(_core, data)
    up, pp = run_integration_with(pure, data)
    print(f"\nmax |p_compiled - p_pure| = {np.max(np.abs(pc - pp)):.3e}")


if __name__ == "__main__":
    main()
