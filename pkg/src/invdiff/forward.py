"""Implicit (Crank-Nicolson) time stepping for the direct problem.

One step from level k to k+1 with coefficient value p_next solves, for the
interior nodes i = 1..N-1,

    (1 + tau/h^2 + tau p_next) u_i' - tau/(2h^2) (u_{i+1}' + u_{i-1}')
        = (1 - tau/h^2) u_i + tau/(2h^2) (u_{i+1} + u_{i-1})
        + tau/2 (f_i' + f_i)

with homogeneous Dirichlet values at i = 0, N. The diffusion term is averaged
between levels; the reaction term is taken fully at the new level, exactly as
the scheme is stated. Negative coefficient values are accepted (iterative
identifiers may produce them); only the zero-pivot guard protects against a
singular step.
"""

import numpy as np

from invdiff import _kernels
from invdiff.errors import ZeroPivotError
from invdiff.model import CoefficientTrace, Field, Grid, ProblemData
from invdiff.tridiag import TridiagonalSystem

_BOUNDARY_TOL = 1e-12


def _conform(grid: Grid, name, vec) -> np.ndarray:
    vec = np.ascontiguousarray(vec, dtype=float)
    if vec.shape != (grid.N + 1,):
        raise ValueError(f"{name} must have length N+1={grid.N + 1}, got {vec.shape}")
    return vec


def assemble_step(grid: Grid, p_next: float, u_prev, f_prev, f_next) -> TridiagonalSystem:
    """Interior system of order N-1 for one implicit step."""
    u_prev = _conform(grid, "u_prev", u_prev)
    f_prev = _conform(grid, "f_prev", f_prev)
    f_next = _conform(grid, "f_next", f_next)
    scale = max(1.0, float(np.max(np.abs(u_prev))))
    if abs(u_prev[0]) > _BOUNDARY_TOL * scale or abs(u_prev[-1]) > _BOUNDARY_TOL * scale:
        raise ValueError("u_prev must satisfy the Dirichlet boundary values")
    n = grid.N - 1
    diag = np.empty(n)
    rhs = np.empty(n)
    _kernels.cn_assemble(u_prev, f_prev, f_next, float(p_next), grid.h, grid.tau,
                         diag, rhs)
    off = np.full(max(n - 1, 0), -0.5 * grid.tau / (grid.h * grid.h))
    return TridiagonalSystem(sub=off, diag=diag, sup=off, rhs=rhs)


def step(grid: Grid, p_next: float, u_prev, f_prev, f_next) -> np.ndarray:
    """Advance one time level; returns the full (N+1)-vector u_next."""
    u_prev = _conform(grid, "u_prev", u_prev)
    f_prev = _conform(grid, "f_prev", f_prev)
    f_next = _conform(grid, "f_next", f_next)
    out = np.empty(grid.N + 1)
    status = _kernels.cn_step(u_prev, f_prev, f_next, float(p_next),
                              grid.h, grid.tau, out)
    if status >= 0:
        raise ZeroPivotError(status)
    return out


def solve_forward(data: ProblemData, p: CoefficientTrace) -> Field:
    """March the scheme over all M steps with the given coefficient trace."""
    grid = data.grid
    trace = p.values if isinstance(p, CoefficientTrace) else np.asarray(p, dtype=float)
    if trace.shape != (grid.M + 1,):
        raise ValueError(f"coefficient trace must have length M+1={grid.M + 1}")
    u = np.empty((grid.M + 1, grid.N + 1))
    u[0] = data.phi
    for k in range(grid.M):
        u[k + 1] = step(grid, trace[k + 1], u[k], data.f[k], data.f[k + 1])
    return Field(u)
