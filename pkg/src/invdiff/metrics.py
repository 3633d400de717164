"""Error metrics and measured convergence orders.

Er(u) is the final-time max-norm error, Er(p) the max-norm error over all
time levels; the L2 variants weight by h resp. tau and, following the metric
definitions, sum over all nodes including both endpoints.
"""

from dataclasses import dataclass

import numpy as np

from invdiff.model import CoefficientTrace, Field, Grid


@dataclass(frozen=True)
class ErrorReport:
    er_u: float
    er_p: float
    l2_u: float
    l2_p: float

    def as_dict(self) -> dict:
        return {"er_u": self.er_u, "er_p": self.er_p,
                "l2_u": self.l2_u, "l2_p": self.l2_p}


def _values(obj):
    return obj.values if hasattr(obj, "values") else np.asarray(obj, dtype=float)


def error_report(u: Field, p: CoefficientTrace, exact_u: Field,
                 exact_p: CoefficientTrace, grid: Grid) -> ErrorReport:
    uv, ev = _values(u), _values(exact_u)
    pv, qv = _values(p), _values(exact_p)
    if uv.shape != ev.shape:
        raise ValueError(f"field shape mismatch: {uv.shape} vs {ev.shape}")
    if pv.shape != qv.shape:
        raise ValueError(f"trace shape mismatch: {pv.shape} vs {qv.shape}")
    du = uv[-1] - ev[-1]
    dp = pv - qv
    return ErrorReport(
        er_u=float(np.max(np.abs(du))),
        er_p=float(np.max(np.abs(dp))),
        l2_u=float(np.sqrt(grid.h * np.sum(du**2))),
        l2_p=float(np.sqrt(grid.tau * np.sum(dp**2))),
    )


def measured_order(errors, steps) -> float:
    """Least-squares slope of log(error) against log(step)."""
    errors = np.asarray(errors, dtype=float)
    steps = np.asarray(steps, dtype=float)
    if errors.shape != steps.shape or errors.ndim != 1 or errors.size < 2:
        raise ValueError("need matching vectors of at least 2 points")
    if np.any(np.diff(steps) >= 0.0):
        raise ValueError("steps must be strictly decreasing")
    if np.any(errors <= 0.0) or not np.all(np.isfinite(errors)):
        raise ValueError("errors must be positive and finite")
    slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
    return float(slope)
