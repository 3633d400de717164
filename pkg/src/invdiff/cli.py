"""Benchmark command line: forward runs, inversions, table sweeps, noise sweeps.

Outputs are CSV files (see `bundles`); every file carries a metadata comment
with the grid, method, tolerance, noise spec, and artifact version, so a run
is reproducible from its own output. Exit status is 0 iff every requested run
converged.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from invdiff import __version__, _kernels
from invdiff.bundles import (load_bundle, save_bundle, write_columns,
                             write_report, write_surface)
from invdiff.errors import NewtonDivergenceError
from invdiff.forward import solve_forward
from invdiff.integration import run_integration
from invdiff.metrics import error_report
from invdiff.model import CoefficientTrace, make_grid, manufactured_problem
from invdiff.newton import NewtonConfig, run_newton
from invdiff.noise import NoiseSpec, perturb, smooth

TABLE_TAU_GRIDS = ((100, 200), (100, 400), (100, 800), (100, 1600))
TABLE_H_GRIDS = ((100, 100), (200, 200), (400, 400), (800, 800))
DEFAULT_SWEEP_DELTAS = (0.0, 0.01, 0.03, 0.05)


def _load_problem(args):
    """Returns (data, exact_u, exact_p, warnings); exact parts None for bundles."""
    if args.problem == "manufactured":
        grid = make_grid(1.0, 1.0, args.N, args.M)
        data, exact_u, exact_p = manufactured_problem(grid)
        return data, exact_u, exact_p, []
    data, warnings = load_bundle(args.problem)
    return data, None, None, warnings


def _apply_noise(data, args, meta):
    if args.noise_delta and args.noise_delta > 0.0:
        spec = NoiseSpec(delta=args.noise_delta, seed=args.seed, kind=args.noise_kind)
        data = perturb(data, spec)
        meta.update({"delta": spec.delta, "noise_seed": spec.seed,
                     "noise_kind": spec.kind})
    return data


def _apply_smoothing(data, args, meta):
    if args.smooth_window:
        from dataclasses import replace

        g = smooth(data.g, args.smooth_window, args.smooth_order)
        gp = smooth(data.gprime, args.smooth_window, args.smooth_order)
        data = replace(data, g=g, gprime=gp)
        meta.update({"smooth_window": args.smooth_window,
                     "smooth_order": args.smooth_order})
    return data


def _grid_meta(grid, method=None, tol=None):
    meta = {"l": grid.l, "T": grid.T, "N": grid.N, "M": grid.M,
            "backend": _kernels.BACKEND}
    if method:
        meta["method"] = method
    if tol is not None:
        meta["tol"] = tol
    return meta


def cmd_forward(args) -> int:
    try:
        data, exact_u, exact_p, warnings = _load_problem(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    grid = data.grid
    if exact_p is not None:
        trace = exact_p
    else:
        print("warning: bundle carries no coefficient; solving with p = 0",
              file=sys.stderr)
        trace = CoefficientTrace(np.zeros(grid.M + 1))
    field = solve_forward(data, trace)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    meta = _grid_meta(grid, method="forward")
    write_surface(out / "u_surface.csv", grid, field.values, meta)
    if exact_u is not None:
        rep = error_report(field, trace, exact_u, exact_p, grid)
        write_report(out / "error_report.csv",
                     [{"h": grid.h, "tau": grid.tau, **rep.as_dict()}], meta)
        print(f"forward: er_u={rep.er_u:.6e}")
    return 0


def _invert_once(data, method, cfg):
    """Returns (field_values, trace_values, err) with err=None on success."""
    if method == "integration":
        field, trace = run_integration(data)
        return field.values, trace.values, None
    try:
        field, trace, _ = run_newton(data, cfg)
        return field.values, trace.values, None
    except NewtonDivergenceError as exc:
        partial_u = exc.partial_field.values if exc.partial_field is not None else None
        return partial_u, exc.partial_trace, exc


def cmd_invert(args) -> int:
    try:
        data, exact_u, exact_p, warnings = _load_problem(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    grid = data.grid
    meta = _grid_meta(grid, method=args.method,
                      tol=args.tol if args.method == "newton" else None)
    clean = data
    data = _apply_noise(data, args, meta)
    data = _apply_smoothing(data, args, meta)

    cfg = NewtonConfig(tol=args.tol, max_iter=args.max_iter, p_init=args.p_init)
    u, p, err = _invert_once(data, args.method, cfg)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    done = 0 if p is None else len(p)
    tcol = grid.t[:done]
    cols, names = [tcol], ["t"]
    if exact_p is not None:
        names.append("p_exact")
        cols.append(exact_p.values[:done])
    names.append("p_numeric")
    cols.append(p if p is not None else np.empty(0))
    write_columns(out / "p_trace.csv", names, cols, meta)
    if u is not None and len(u) == grid.M + 1:
        write_surface(out / "u_surface.csv", grid, u, meta)
    if err is not None:
        print(f"error: newton diverged: {err}", file=sys.stderr)
        return 1
    if exact_u is not None:
        rep = error_report(u, p, exact_u.values, exact_p.values, grid)
        write_report(out / "error_report.csv",
                     [{"h": grid.h, "tau": grid.tau, **rep.as_dict()}], meta)
        print(f"invert[{args.method}]: er_u={rep.er_u:.6e} er_p={rep.er_p:.6e}")
    return 0


def _table_cell(method, N, M, tol):
    grid = make_grid(1.0, 1.0, N, M)
    data, exact_u, exact_p = manufactured_problem(grid)
    if method == "integration":
        field, trace = run_integration(data)
    else:
        field, trace, _ = run_newton(data, NewtonConfig(tol=tol))
    rep = error_report(field, trace, exact_u, exact_p, grid)
    return {"h": grid.h, "tau": grid.tau, **rep.as_dict()}


def cmd_tables(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = {
        "table1": ("integration", TABLE_TAU_GRIDS),
        "table2": ("integration", TABLE_H_GRIDS),
        "table3": ("newton", TABLE_TAU_GRIDS),
        "table4": ("newton", TABLE_H_GRIDS),
    }
    status = 0
    with ThreadPoolExecutor() as pool:
        futures = {
            name: [pool.submit(_table_cell, method, N, M, args.tol)
                   for (N, M) in grids]
            for name, (method, grids) in jobs.items()
        }
        for name, cells in futures.items():
            method = jobs[name][0]
            rows = []
            for fut in cells:
                try:
                    rows.append(fut.result())
                except NewtonDivergenceError as exc:
                    print(f"error: {name} cell diverged: {exc}", file=sys.stderr)
                    status = 1
            write_report(out / f"{name}.csv", rows,
                         {"method": method, "tol": args.tol,
                          "backend": _kernels.BACKEND})
    comparison = []
    for method in ("integration", "newton"):
        row = _table_cell(method, 100, 100, args.tol)
        comparison.append({**row, "method": method})
    from invdiff.bundles import write_csv, _base_meta

    write_csv(out / "comparison.csv",
              ["method", "er_u", "er_p", "l2_u", "l2_p"],
              [[r["method"], r["er_u"], r["er_p"], r["l2_u"], r["l2_p"]]
               for r in comparison],
              _base_meta({"h": 0.01, "tau": 0.01, "tol": args.tol}))
    print(f"tables written to {out}")
    return status


def cmd_noise_sweep(args) -> int:
    if args.method == "newton" and not args.allow_unstable:
        print("error: newton under noise is unstable; pass --allow-unstable "
              "to run it anyway", file=sys.stderr)
        return 2
    try:
        data, exact_u, exact_p, warnings = _load_problem(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    grid = data.grid
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg = NewtonConfig(tol=args.tol, max_iter=args.max_iter, p_init=args.p_init)
    status = 0

    def one_delta(delta):
        spec = NoiseSpec(delta=delta, seed=args.seed, kind=args.noise_kind)
        noisy = perturb(data, spec) if delta > 0.0 else data
        u, p, err = _invert_once(noisy, args.method, cfg)
        return spec, noisy, p, err

    with ThreadPoolExecutor() as pool:
        results = list(pool.map(one_delta, args.noise_delta))

    for spec, noisy, p, err in results:
        meta = _grid_meta(grid, method=args.method,
                          tol=args.tol if args.method == "newton" else None)
        meta.update({"delta": spec.delta, "noise_seed": spec.seed,
                     "noise_kind": spec.kind})
        done = 0 if p is None else len(p)
        names = ["t", "g_clean", "g_noisy"]
        cols = [grid.t[:done], data.g[:done], noisy.g[:done]]
        if exact_p is not None:
            names.append("p_exact")
            cols.append(exact_p.values[:done])
        names.append("p_numeric")
        cols.append(p if p is not None else np.empty(0))
        write_columns(out / f"noise_delta{spec.delta:g}.csv", names, cols, meta)
        if err is not None:
            print(f"error: delta={spec.delta:g} diverged: {err}", file=sys.stderr)
            status = 1
    print(f"noise sweep written to {out}")
    return status


def cmd_bundle(args) -> int:
    grid = make_grid(1.0, 1.0, args.N, args.M)
    data, _, _ = manufactured_problem(grid)
    meta = {"problem": "manufactured"}
    data = _apply_noise(data, args, meta)
    save_bundle(args.out_dir, data, meta)
    print(f"problem bundle written to {args.out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invdiff",
        description="identify a time-dependent potential coefficient in a 1D "
                    "diffusion equation from integral measurements",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, noise_list=False):
        p.add_argument("--problem", default="manufactured",
                       help="'manufactured' or a problem-bundle directory")
        p.add_argument("--N", type=int, default=100, help="spatial intervals")
        p.add_argument("--M", type=int, default=100, help="time steps")
        p.add_argument("--out-dir", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=0, help="noise RNG seed")
        p.add_argument("--noise-kind", default="gaussian-relative",
                       choices=("gaussian-relative", "gaussian-absolute",
                                "uniform-relative"))
        if noise_list:
            p.add_argument("--noise-delta", type=float, nargs="+",
                           default=list(DEFAULT_SWEEP_DELTAS),
                           help="noise levels to sweep")
        else:
            p.add_argument("--noise-delta", type=float, default=0.0,
                           help="relative noise level")

    def newton_opts(p):
        p.add_argument("--tol", type=float, default=1e-12,
                       help="newton residual tolerance")
        p.add_argument("--max-iter", type=int, default=50)
        p.add_argument("--p-init", type=float, default=None,
                       help="initial coefficient guess (default: reconstruct)")

    p = sub.add_parser("forward", help="solve the direct problem")
    common(p)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("invert", help="identify the coefficient")
    common(p)
    newton_opts(p)
    p.add_argument("--method", choices=("integration", "newton"),
                   default="integration")
    p.add_argument("--smooth-window", type=int, default=0,
                   help="Savitzky-Golay window (odd; 0 disables)")
    p.add_argument("--smooth-order", type=int, default=2)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("tables", help="regenerate the benchmark error tables")
    p.add_argument("--out-dir", default="out")
    newton_opts(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("noise-sweep", help="noise robustness experiment")
    common(p, noise_list=True)
    newton_opts(p)
    p.add_argument("--method", choices=("integration", "newton"),
                   default="integration")
    p.add_argument("--allow-unstable", action="store_true",
                   help="permit newton under noise")
    p.set_defaults(func=cmd_noise_sweep)

    p = sub.add_parser("bundle", help="write a problem bundle")
    common(p)
    p.set_defaults(func=cmd_bundle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
