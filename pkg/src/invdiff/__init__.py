"""Identification of a time-dependent potential coefficient in the 1D
diffusion equation u_t = u_xx - p(t) u + f from an integral measurement
int_0^l u(x,t) w(x) dx = g(t).

Two classical identifiers (pointwise integration-based reconstruction and a
per-step Newton iteration with analytic sensitivities) share one implicit
finite-difference core, available as a compiled extension with a pure-Python
fallback (`invdiff._kernels.BACKEND` names the active one).
"""

__version__ = "0.1.0"

from invdiff._kernels import BACKEND
from invdiff.errors import (DerivativeUnderflowError, NewtonDivergenceError,
                            NonConvergenceError, ZeroPivotError)
from invdiff.forward import assemble_step, solve_forward, step
from invdiff.integration import reconstruct_p, run_integration
from invdiff.metrics import ErrorReport, error_report, measured_order
from invdiff.model import (CoefficientTrace, Field, Grid, ProblemData,
                           gprime_fallback, make_grid, manufactured_problem)
from invdiff.newton import (NewtonConfig, newton_step_solve, residual,
                            residual_derivative, run_newton, sensitivity_step)
from invdiff.noise import NoiseSpec, perturb, smooth
from invdiff.quadrature import weighted_integral
from invdiff.tridiag import TridiagonalSystem, thomas_solve

__all__ = [
    "BACKEND",
    "CoefficientTrace",
    "DerivativeUnderflowError",
    "ErrorReport",
    "Field",
    "Grid",
    "NewtonConfig",
    "NewtonDivergenceError",
    "NoiseSpec",
    "NonConvergenceError",
    "ProblemData",
    "TridiagonalSystem",
    "ZeroPivotError",
    "assemble_step",
    "error_report",
    "gprime_fallback",
    "make_grid",
    "manufactured_problem",
    "measured_order",
    "newton_step_solve",
    "perturb",
    "reconstruct_p",
    "residual",
    "residual_derivative",
    "run_integration",
    "run_newton",
    "sensitivity_step",
    "smooth",
    "solve_forward",
    "step",
    "thomas_solve",
    "weighted_integral",
]
