"""Tridiagonal systems and the Thomas solver.

Every linear system in this package (implicit time step, Newton sensitivity)
is tridiagonal and strictly diagonally dominant as long as the coefficient
stays nonnegative, so the solver does no pivoting; a vanishing pivot raises
`ZeroPivotError` instead of propagating garbage.
"""

from dataclasses import dataclass, field

import numpy as np

from invdiff import _kernels
from invdiff.errors import ZeroPivotError

__all__ = ["TridiagonalSystem", "thomas_solve", "ZeroPivotError"]


@dataclass(frozen=True)
class TridiagonalSystem:
    """Three diagonals plus right-hand side of an order-n system."""

    sub: np.ndarray = field(repr=False)
    diag: np.ndarray = field(repr=False)
    sup: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)

    def __post_init__(self):
        sub = np.ascontiguousarray(self.sub, dtype=float)
        diag = np.ascontiguousarray(self.diag, dtype=float)
        sup = np.ascontiguousarray(self.sup, dtype=float)
        rhs = np.ascontiguousarray(self.rhs, dtype=float)
        n = diag.shape[0]
        if n < 1:
            raise ValueError("system order must be at least 1")
        if sub.shape != (max(n - 1, 0),) or sup.shape != (max(n - 1, 0),):
            raise ValueError(f"off-diagonals must have length {n - 1}")
        if rhs.shape != (n,):
            raise ValueError(f"rhs must have length {n}")
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "sup", sup)
        object.__setattr__(self, "rhs", rhs)

    @property
    def n(self) -> int:
        return self.diag.shape[0]


def thomas_solve(sys: TridiagonalSystem) -> np.ndarray:
    """Solve sys in O(n) by forward elimination and back substitution."""
    out = np.empty(sys.n)
    status = _kernels.thomas(sys.sub, sys.diag, sys.sup, sys.rhs, out)
    if status >= 0:
        raise ZeroPivotError(status)
    return out
