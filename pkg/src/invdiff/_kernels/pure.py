"""Pure-Python reference kernels.

Same call surface as the compiled extension `_core`; used as the import-time
fallback and as the comparison baseline in the backend benchmark. Solver
status convention: -1 on success, otherwise the 0-based row of the failing
pivot.
"""

import numpy as np


def thomas(sub, diag, sup, rhs, out):
    """Forward elimination / back substitution, no pivoting."""
    n = diag.shape[0]
    den = diag[0]
    if den == 0.0 or not np.isfinite(den):
        return 0
    if n == 1:
        out[0] = rhs[0] / den
        return -1
    c = np.empty(n - 1)
    d = np.empty(n)
    c[0] = sup[0] / den
    d[0] = rhs[0] / den
    for i in range(1, n - 1):
        den = diag[i] - sub[i - 1] * c[i - 1]
        if den == 0.0 or not np.isfinite(den):
            return i
        c[i] = sup[i] / den
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / den
    den = diag[n - 1] - sub[n - 2] * c[n - 2]
    if den == 0.0 or not np.isfinite(den):
        return n - 1
    d[n - 1] = (rhs[n - 1] - sub[n - 2] * d[n - 2]) / den
    out[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return -1


def cn_assemble(u_prev, f_prev, f_next, p_next, h, tau, diag_out, rhs_out):
    """Interior diagonal and right-hand side of one implicit step."""
    N = u_prev.shape[0] - 1
    r = tau / (h * h)
    diag_out[:] = 1.0 + r + tau * p_next
    rhs_out[:] = (
        (1.0 - r) * u_prev[1:N]
        + 0.5 * r * (u_prev[2 : N + 1] + u_prev[0 : N - 1])
        + 0.5 * tau * (f_next[1:N] + f_prev[1:N])
    )


def cn_step(u_prev, f_prev, f_next, p_next, h, tau, out):
    """One fused time step: assemble interior system, solve, zero boundaries."""
    N = u_prev.shape[0] - 1
    n = N - 1
    diag = np.empty(n)
    rhs = np.empty(n)
    cn_assemble(u_prev, f_prev, f_next, p_next, h, tau, diag, rhs)
    r = tau / (h * h)
    off = np.full(n - 1, -0.5 * r)
    status = thomas(off, diag, off, rhs, out[1:N])
    out[0] = 0.0
    out[N] = 0.0
    return status

def sens_solve(u_next, p_next, h, tau, out):
    """Coefficient-derivative system: same matrix as the step, rhs -tau*u."""
    N = u_next.shape[0] - 1
    n = N - 1
    r = tau / (h * h)
    diag = np.empty(n)
    diag[:] = 1.0 + r + tau * p_next
    rhs = -tau * u_next[1:N]
    off = np.full(n - 1, -0.5 * r)
    status = thomas(off, diag, off, rhs, out[1:N])
    out[0] = 0.0
    out[N] = 0.0
    return status


def weighted_dot(values, weights, h):
    """Interior-sum quadrature h * sum_{i=1}^{n-2} v_i w_i."""
    return h * float(np.dot(values[1:-1], weights[1:-1]))
