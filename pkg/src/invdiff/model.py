"""Discretization, problem-instance data, and the manufactured benchmark.

The inverse problem: find p(t) and u(x,t) with

    u_t = u_xx - p(t) u + f(x,t)   on (0,l) x (0,T]
    u(x,0) = phi(x),  u(0,t) = u(l,t) = 0
    int_0^l u(x,t) w(x) dx = g(t)

All solvers operate on plain grid samples held in `ProblemData`; analytic
callbacks exist only inside `manufactured_problem`.
"""

from dataclasses import dataclass, field

import numpy as np

# absolute slack for "vanishes at the boundary" checks; analytic samples of
# sin(pi x) at x=l give ~1e-16, not exact zeros
_BOUNDARY_TOL = 1e-12


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Grid:
    """Uniform space-time grid: x_i = i*h (i=0..N), t_k = k*tau (k=0..M)."""

    l: float
    T: float
    N: int
    M: int
    h: float
    tau: float

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.l, self.N + 1)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.M + 1)


def make_grid(l: float, T: float, N: int, M: int) -> Grid:
    """Build and validate a grid with h = l/N, tau = T/M."""
    if not (l > 0.0):
        raise ValueError(f"spatial length must be positive, got {l}")
    if not (T > 0.0):
        raise ValueError(f"final time must be positive, got {T}")
    if int(N) != N or N < 3:
        raise ValueError(f"need at least N=3 spatial intervals, got {N}")
    if int(M) != M or M < 1:
        raise ValueError(f"need at least M=1 time steps, got {M}")
    N, M = int(N), int(M)
    h = l / N
    tau = T / M
    assert abs(h * N - l) <= 4 * np.spacing(l)
    assert abs(tau * M - T) <= 4 * np.spacing(T)
    return Grid(l=float(l), T=float(T), N=N, M=M, h=h, tau=tau)


@dataclass(frozen=True)
class ProblemData:
    """Grid samples of f, phi, omega, omega'', g, g' for one inverse problem.

    Shapes: f is (M+1, N+1); phi, omega, omega_xx are (N+1); g, gprime are
    (M+1). Boundary samples of phi, omega and f vanish and g never does;
    violations are rejected at construction.
    """

    grid: Grid
    f: np.ndarray
    phi: np.ndarray
    omega: np.ndarray
    omega_xx: np.ndarray
    g: np.ndarray
    gprime: np.ndarray

    def __post_init__(self):
        N, M = self.grid.N, self.grid.M
        object.__setattr__(self, "f", _frozen(self.f))
        object.__setattr__(self, "phi", _frozen(self.phi))
        object.__setattr__(self, "omega", _frozen(self.omega))
        object.__setattr__(self, "omega_xx", _frozen(self.omega_xx))
        object.__setattr__(self, "g", _frozen(self.g))
        object.__setattr__(self, "gprime", _frozen(self.gprime))

        if self.f.shape != (M + 1, N + 1):
            raise ValueError(f"f must have shape {(M + 1, N + 1)}, got {self.f.shape}")
        for name in ("phi", "omega", "omega_xx"):
            arr = getattr(self, name)
            if arr.shape != (N + 1,):
                raise ValueError(f"{name} must have shape {(N + 1,)}, got {arr.shape}")
        for name in ("g", "gprime"):
            arr = getattr(self, name)
            if arr.shape != (M + 1,):
                raise ValueError(f"{name} must have shape {(M + 1,)}, got {arr.shape}")

        def _check_boundary(name, left, right, scale):
            tol = _BOUNDARY_TOL * max(1.0, scale)
            if abs(left) > tol or abs(right) > tol:
                raise ValueError(f"{name} must vanish at x=0 and x=l")

        _check_boundary("phi", self.phi[0], self.phi[-1], np.max(np.abs(self.phi)))
        _check_boundary("omega", self.omega[0], self.omega[-1], np.max(np.abs(self.omega)))
        fscale = np.max(np.abs(self.f)) if self.f.size else 0.0
        for k in range(M + 1):
            _check_boundary("f", self.f[k, 0], self.f[k, -1], fscale)
        if np.any(np.abs(self.g) == 0.0):
            raise ValueError("g must be nonvanishing at every time level")


@dataclass(frozen=True)
class Field:
    """Solution surface: values[k, i] approximates u(x_i, t_k)."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.values.ndim != 2:
            raise ValueError("field values must be a (M+1, N+1) matrix")


@dataclass(frozen=True)
class CoefficientTrace:
    """Recovered coefficient sequence: values[k] approximates p(t_k)."""

    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        if self.values.ndim != 1:
            raise ValueError("coefficient trace must be a vector")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("coefficient trace contains non-finite entries")


def gprime_fallback(g: np.ndarray, tau: float) -> np.ndarray:
    """Differentiate g samples: central interior, one-sided second-order ends."""
    g = np.asarray(g, dtype=float)
    M = g.shape[0] - 1
    out = np.empty_like(g)
    if M == 1:
        out[:] = (g[1] - g[0]) / tau
        return out
    out[1:M] = (g[2:] - g[:-2]) / (2.0 * tau)
    out[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * tau)
    out[M] = (3.0 * g[M] - 4.0 * g[M - 1] + g[M - 2]) / (2.0 * tau)
    return out


def manufactured_problem(grid: Grid):
    """Benchmark instance with closed-form solution.

        u(x,t) = e^t sin(pi x),  p(t) = e^(-t)
        f(x,t) = sin(pi x) (1 + pi^2 e^t + e^t)
        omega(x) = sin(pi x),  g(t) = e^t / 2

    Returns (data, exact_u, exact_p). Requires l = 1.
    """
    if grid.l != 1.0:
        raise ValueError("manufactured problem is defined on l = 1")
    x = grid.x
    t = grid.t
    sx = np.sin(np.pi * x)
    sx[0] = 0.0
    sx[-1] = 0.0
    et = np.exp(t)

    u_exact = et[:, None] * sx[None, :]
    p_exact = np.exp(-t)
    f = sx[None, :] * (1.0 + (np.pi**2 + 1.0) * et[:, None])
    phi = sx.copy()
    omega = sx.copy()
    omega_xx = -(np.pi**2) * sx
    g = 0.5 * et
    gprime = 0.5 * et

    data = ProblemData(grid=grid, f=f, phi=phi, omega=omega,
                       omega_xx=omega_xx, g=g, gprime=gprime)
    return data, Field(u_exact), CoefficientTrace(p_exact)
