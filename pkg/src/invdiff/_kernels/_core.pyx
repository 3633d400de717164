# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Thomas elimination and fused Crank-Nicolson steps."""

import numpy as np

from libc.math cimport isfinite


cdef inline bint _bad(double x) noexcept nogil:
    return x == 0.0 or not isfinite(x)


cdef int _thomas(const double[::1] sub, const double[::1] diag,
                 const double[::1] sup, const double[::1] rhs,
                 double[::1] out, double[::1] c, double[::1] d) noexcept nogil:
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double den = diag[0]
    if _bad(den):
        return 0
    if n == 1:
        out[0] = rhs[0] / den
        return -1
    c[0] = sup[0] / den
    d[0] = rhs[0] / den
    for i in range(1, n - 1):
        den = diag[i] - sub[i - 1] * c[i - 1]
        if _bad(den):
            return <int> i
        c[i] = sup[i] / den
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / den
    den = diag[n - 1] - sub[n - 2] * c[n - 2]
    if _bad(den):
        return <int> (n - 1)
    d[n - 1] = (rhs[n - 1] - sub[n - 2] * d[n - 2]) / den
    out[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return -1


cdef int _tri_const_off(const double[::1] diag, const double[::1] rhs,
                        double off, double[::1] out,
                        double[::1] c, double[::1] d) noexcept nogil:
    # same sweep with constant off-diagonals
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef double den = diag[0]
    if _bad(den):
        return 0
    if n == 1:
        out[0] = rhs[0] / den
        return -1
    c[0] = off / den
    d[0] = rhs[0] / den
    for i in range(1, n - 1):
        den = diag[i] - off * c[i - 1]
        if _bad(den):
            return <int> i
        c[i] = off / den
        d[i] = (rhs[i] - off * d[i - 1]) / den
    den = diag[n - 1] - off * c[n - 2]
    if _bad(den):
        return <int> (n - 1)
    d[n - 1] = (rhs[n - 1] - off * d[n - 2]) / den
    out[n - 1] = d[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = d[i] - c[i] * out[i + 1]
    return -1


cdef void _assemble(const double[::1] u_prev, const double[::1] f_prev,
                    const double[::1] f_next, double p_next,
                    double h, double tau,
                    double[::1] diag, double[::1] rhs) noexcept nogil:
    cdef Py_ssize_t N = u_prev.shape[0] - 1
    cdef Py_ssize_t i
    cdef double r = tau / (h * h)
    cdef double dval = 1.0 + r + tau * p_next
    for i in range(1, N):
        diag[i - 1] = dval
        rhs[i - 1] = (1.0 - r) * u_prev[i] \
            + 0.5 * r * (u_prev[i + 1] + u_prev[i - 1]) \
            + 0.5 * tau * (f_next[i] + f_prev[i])


def thomas(const double[::1] sub, const double[::1] diag, const double[::1] sup,
           const double[::1] rhs, double[::1] out):
    cdef Py_ssize_t n = diag.shape[0]
    cdef double[::1] c = np.empty(max(n - 1, 1))
    cdef double[::1] d = np.empty(n)
    cdef int status
    with nogil:
        status = _thomas(sub, diag, sup, rhs, out, c, d)
    return status


def cn_assemble(const double[::1] u_prev, const double[::1] f_prev,
                const double[::1] f_next, double p_next, double h, double tau,
                double[::1] diag_out, double[::1] rhs_out):
    with nogil:
        _assemble(u_prev, f_prev, f_next, p_next, h, tau, diag_out, rhs_out)


def cn_step(const double[::1] u_prev, const double[::1] f_prev,
            const double[::1] f_next, double p_next, double h, double tau,
            double[::1] out):
    cdef Py_ssize_t N = u_prev.shape[0] - 1
    cdef Py_ssize_t n = N - 1
    cdef double[::1] diag = np.empty(n)
    cdef double[::1] rhs = np.empty(n)
    cdef double[::1] c = np.empty(max(n - 1, 1))
    cdef double[::1] d = np.empty(n)
    cdef double off = -0.5 * tau / (h * h)
    cdef int status
    with nogil:
        _assemble(u_prev, f_prev, f_next, p_next, h, tau, diag, rhs)
        status = _tri_const_off(diag, rhs, off, out[1:N], c, d)
        out[0] = 0.0
        out[N] = 0.0
    return status


def sens_solve(const double[::1] u_next, double p_next, double h, double tau,
               double[::1] out):
    cdef Py_ssize_t N = u_next.shape[0] - 1
    cdef Py_ssize_t n = N - 1
    cdef double[::1] diag = np.empty(n)
    cdef double[::1] rhs = np.empty(n)
    cdef double[::1] c = np.empty(max(n - 1, 1))
    cdef double[::1] d = np.empty(n)
    cdef double r = tau / (h * h)
    cdef double dval = 1.0 + r + tau * p_next
    cdef double off = -0.5 * r
    cdef Py_ssize_t i
    cdef int status
    with nogil:
        for i in range(n):
            diag[i] = dval
            rhs[i] = -tau * u_next[i + 1]
        status = _tri_const_off(diag, rhs, off, out[1:N], c, d)
        out[0] = 0.0
        out[N] = 0.0
    return status


def weighted_dot(const double[::1] values, const double[::1] weights, double h):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t i
    cdef double acc = 0.0
    with nogil:
        for i in range(1, n - 1):
            acc += values[i] * weights[i]
    return h * acc
