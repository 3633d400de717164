"""Exception types shared across the solvers."""


class ZeroPivotError(ArithmeticError):
    """Thomas elimination hit a zero (or non-finite) pivot."""

    def __init__(self, row):
        self.row = row
        super().__init__(f"zero pivot in tridiagonal elimination at row {row}")


class NewtonDivergenceError(RuntimeError):
    """Newton iteration failed; carries the failing (k, j, p, F) state."""

    def __init__(self, message, time_index, iteration, p, residual,
                 partial_field=None, partial_trace=None):
        self.time_index = time_index
        self.iteration = iteration
        self.p = p
        self.residual = residual
        self.partial_field = partial_field
        self.partial_trace = partial_trace
        super().__init__(
            f"{message} (k={time_index}, j={iteration}, p={p:.6e}, F={residual:.6e})"
        )


class DerivativeUnderflowError(NewtonDivergenceError):
    """|F'(p)| fell below the underflow guard."""


class NonConvergenceError(NewtonDivergenceError):
    """Residual still above tolerance after the iteration cap."""
