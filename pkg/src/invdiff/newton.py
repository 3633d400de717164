"""Newton-Raphson identification with the analytic sensitivity system.

At each time level the scalar root problem is

    F(p) = h * sum_{i=1}^{N-1} u_i(p) w(x_i) - g(t_{k+1}) = 0,

where u(p) is the implicit step taken with coefficient p. Differentiating the
step w.r.t. p yields a linear system for s = du/dp with the same tridiagonal
matrix and right-hand side -tau*u, so F'(p) = h * sum s_i w(x_i) is exact and
each Newton iteration costs two Thomas solves.
"""

from dataclasses import dataclass

import numpy as np

from invdiff import _kernels
from invdiff.errors import (DerivativeUnderflowError, NewtonDivergenceError,
                            NonConvergenceError, ZeroPivotError)
from invdiff.forward import step
from invdiff.integration import reconstruct_p
from invdiff.model import CoefficientTrace, Field, Grid, ProblemData
from invdiff.quadrature import weighted_integral

_DERIVATIVE_FLOOR = 1e-14


@dataclass(frozen=True)
class NewtonConfig:
    """Tolerance, iteration cap, and the coefficient guess at k=0.

    With p_init=None the initial coefficient is reconstructed from the
    initial row via the integration formula, which is a free and accurate
    warm start.
    """

    tol: float = 1e-12
    max_iter: int = 50
    p_init: float | None = None

    def __post_init__(self):
        if not (self.tol > 0.0):
            raise ValueError("tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("need at least one Newton iteration")


def residual(u_row, data: ProblemData, k: int) -> float:
    """Discrete measurement mismatch at time level k."""
    return weighted_integral(u_row, data.omega, data.grid.h) - data.g[k]


def sensitivity_step(grid: Grid, p_next: float, u_next) -> np.ndarray:
    """Solve for s = du^{k+1}/dp^{k+1}; same matrix as the forward step."""
    u_next = np.ascontiguousarray(u_next, dtype=float)
    if u_next.shape != (grid.N + 1,):
        raise ValueError(f"u_next must have length N+1={grid.N + 1}")
    out = np.empty(grid.N + 1)
    status = _kernels.sens_solve(u_next, float(p_next), grid.h, grid.tau, out)
    if status >= 0:
        raise ZeroPivotError(status)
    return out


def residual_derivative(s, data: ProblemData) -> float:
    """dF/dp from the sensitivity solution."""
    return weighted_integral(s, data.omega, data.grid.h)


def newton_step_solve(data: ProblemData, k: int, u_prev, p_guess: float,
                      cfg: NewtonConfig):
    """Solve F(p)=0 for the step k -> k+1; returns (p, u_next, iterations)."""
    grid = data.grid
    p = float(p_guess)
    for j in range(cfg.max_iter):
        u_next = step(grid, p, u_prev, data.f[k], data.f[k + 1])
        F = residual(u_next, data, k + 1)
        if abs(F) < cfg.tol:
            return p, u_next, j
        s = sensitivity_step(grid, p, u_next)
        Fp = residual_derivative(s, data)
        if abs(Fp) < _DERIVATIVE_FLOOR:
            raise DerivativeUnderflowError(
                "residual derivative underflow", k, j, p, F)
        p = p - F / Fp
    u_next = step(grid, p, u_prev, data.f[k], data.f[k + 1])
    F = residual(u_next, data, k + 1)
    if abs(F) < cfg.tol:
        return p, u_next, cfg.max_iter
    raise NonConvergenceError(
        "Newton iteration cap exceeded", k, cfg.max_iter, p, F)


def run_newton(data: ProblemData, cfg: NewtonConfig | None = None):
    """Identify (u, p) step by step, warm-starting each level from the last.

    Returns (Field, CoefficientTrace, iteration_log). On failure the raised
    `NewtonDivergenceError` carries the failing time index and the partial
    field/trace computed so far.
    """
    cfg = cfg or NewtonConfig()
    grid = data.grid
    u = np.empty((grid.M + 1, grid.N + 1))
    p = np.empty(grid.M + 1)
    iters = np.zeros(grid.M, dtype=int)
    u[0] = data.phi
    p[0] = cfg.p_init if cfg.p_init is not None else reconstruct_p(
        u[0], data.f[0], data, 0)
    for k in range(grid.M):
        try:
            p[k + 1], u[k + 1], iters[k] = newton_step_solve(
                data, k, u[k], p[k], cfg)
        except NewtonDivergenceError as exc:
            exc.partial_field = Field(u[: k + 1].copy())
            exc.partial_trace = p[: k + 1].copy()
            raise
    return Field(u), CoefficientTrace(p), iters
