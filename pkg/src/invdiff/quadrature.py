"""Spatial quadrature for the measurement integrals.

A single rule is used everywhere: the interior sum h * sum_{i=1}^{N-1}
v_i w_i. Because every weight function here vanishes at both boundaries this
coincides with the trapezoidal rule, and using one rule for the Newton
residual and its sensitivity keeps the analytic Jacobian exact.
"""

import numpy as np

from invdiff import _kernels


def weighted_integral(values, weights, h: float) -> float:
    """h-weighted interior dot product of two nodal vectors."""
    values = np.ascontiguousarray(values, dtype=float)
    weights = np.ascontiguousarray(weights, dtype=float)
    if values.shape != weights.shape or values.ndim != 1:
        raise ValueError(
            f"length mismatch: values {values.shape} vs weights {weights.shape}"
        )
    return _kernels.weighted_dot(values, weights, h)
