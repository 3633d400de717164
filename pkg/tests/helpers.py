"""Independent oracles shared by the test modules.

These deliberately avoid the library's own linear algebra: the dense solver
does Gaussian elimination with partial pivoting, and the matvec multiplies
the materialized matrix directly.
"""

import numpy as np


def tridiag_dense(sub, diag, sup):
    n = len(diag)
    A = np.zeros((n, n))
    A[np.arange(n), np.arange(n)] = diag
    A[np.arange(1, n), np.arange(n - 1)] = sub
    A[np.arange(n - 1), np.arange(1, n)] = sup
    return A


def tridiag_matvec(sub, diag, sup, x):
    n = len(diag)
    y = diag * x
    y[1:] += sub * x[:-1]
    y[:-1] += sup * x[1:]
    return y


def gauss_solve(A, b):
    """Dense Gaussian elimination with partial pivoting."""
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    n = A.shape[0]
    for col in range(n - 1):
        pivot = col + int(np.argmax(np.abs(A[col:, col])))
        if pivot != col:
            A[[col, pivot]] = A[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        for row in range(col + 1, n):
            m = A[row, col] / A[col, col]
            A[row, col:] -= m * A[col, col:]
            b[row] -= m * b[col]
    x = np.empty(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - A[row, row + 1 :] @ x[row + 1 :]) / A[row, row]
    return x


def random_dd_system(rng, n, bound=10.0):
    """Strictly diagonally dominant tridiagonal system with entries in [-bound, bound]."""
    sub = rng.uniform(-bound / 3, bound / 3, n - 1) if n > 1 else np.empty(0)
    sup = rng.uniform(-bound / 3, bound / 3, n - 1) if n > 1 else np.empty(0)
    diag = np.empty(n)
    for i in range(n):
        neighbors = (abs(sub[i - 1]) if i > 0 else 0.0) + (abs(sup[i]) if i < n - 1 else 0.0)
        mag = neighbors + rng.uniform(0.5, max(bound - neighbors, 1.0))
        diag[i] = mag * (1 if rng.random() < 0.5 else -1)
    rhs = rng.uniform(-bound, bound, n)
    return sub, diag, sup, rhs
