"""Integration-based identification (pointwise reconstruction of p).

Differentiating the measurement identity int u w dx = g(t) in time,
substituting the PDE and integrating the diffusion term by parts twice (the
boundary terms vanish because u and w do) gives

    p(t) = ( int u w'' dx + int f w dx - g'(t) ) / g(t),

discretized with the interior-sum quadrature. The march solves each implicit
step with the latest reconstructed coefficient value, then reconstructs the
next one from the new row; there is no inner re-solve.
"""

import numpy as np

from invdiff.forward import step
from invdiff.model import CoefficientTrace, Field, ProblemData
from invdiff.quadrature import weighted_integral

_G_FLOOR = 1e-14


def reconstruct_p(u_row, f_row, data: ProblemData, k: int) -> float:
    """Evaluate the reconstruction formula at time level k."""
    g_k = data.g[k]
    if abs(g_k) < _G_FLOOR:
        raise ValueError(f"|g[{k}]| = {abs(g_k):.3e} is below the division guard")
    h = data.grid.h
    num = (weighted_integral(u_row, data.omega_xx, h)
           + weighted_integral(f_row, data.omega, h)
           - data.gprime[k])
    return num / g_k


def run_integration(data: ProblemData):
    """Identify (u, p) over the whole grid; returns (Field, CoefficientTrace)."""
    grid = data.grid
    u = np.empty((grid.M + 1, grid.N + 1))
    p = np.empty(grid.M + 1)
    u[0] = data.phi
    p[0] = reconstruct_p(u[0], data.f[0], data, 0)
    for k in range(grid.M):
        u[k + 1] = step(grid, p[k], u[k], data.f[k], data.f[k + 1])
        p[k + 1] = reconstruct_p(u[k + 1], data.f[k + 1], data, k + 1)
    return Field(u), CoefficientTrace(p)
