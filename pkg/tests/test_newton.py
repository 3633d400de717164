import numpy as np
import pytest

from invdiff import (DerivativeUnderflowError, NewtonConfig, NewtonDivergenceError,
                     assemble_step, error_report, make_grid, manufactured_problem,
                     newton_step_solve, residual, residual_derivative, run_newton,
                     sensitivity_step, step, thomas_solve)
from invdiff.model import ProblemData

from helpers import gauss_solve, tridiag_dense


def manufactured(N, M):
    return manufactured_problem(make_grid(1, 1, N, M))


def zero_problem(N, M):
    data, _, _ = manufactured(N, M)
    return ProblemData(grid=data.grid, f=np.zeros_like(data.f),
                       phi=np.zeros_like(data.phi), omega=data.omega,
                       omega_xx=data.omega_xx, g=np.ones_like(data.g),
                       gprime=np.zeros_like(data.gprime))


def test_residual_exact_row():
    data, exact_u, _ = manufactured(100, 10)
    assert abs(residual(exact_u.values[0], data, 0)) <= 2e-4


def test_residual_zero_row():
    data, _, _ = manufactured(100, 10)
    assert residual(np.zeros(101), data, 0) == pytest.approx(-0.5, abs=1e-15)


def test_residual_scaled_row():
    data, exact_u, _ = manufactured(100, 10)
    val = residual(2.0 * exact_u.values[0], data, 0)
    assert val == pytest.approx(0.5, abs=4e-4)


def test_sensitivity_zero_state():
    grid = make_grid(1, 1, 10, 10)
    s = sensitivity_step(grid, 1.0, np.zeros(11))
    assert np.all(s == 0.0)


def test_sensitivity_small_dense_oracle():
    grid = make_grid(1, 0.1, 4, 1)
    assert grid.h == 0.25 and grid.tau == 0.1
    u_next = np.array([0.0, 1.0, 1.0, 1.0, 0.0])
    s = sensitivity_step(grid, 1.0, u_next)
    r = grid.tau / grid.h**2
    A = tridiag_dense(np.full(2, -0.5 * r), np.full(3, 1 + r + grid.tau), np.full(2, -0.5 * r))
    ref = gauss_solve(A, -grid.tau * u_next[1:4])
    assert np.max(np.abs(s[1:4] - ref)) < 1e-14
    assert s[0] == 0.0 and s[4] == 0.0


def test_sensitivity_matches_finite_difference():
    data, exact_u, _ = manufactured(50, 50)
    grid = data.grid
    k, pv = 3, 0.7
    u_prev = exact_u.values[k]
    u_next = step(grid, pv, u_prev, data.f[k], data.f[k + 1])
    s = sensitivity_step(grid, pv, u_next)
    d = 1e-6
    up = step(grid, pv + d, u_prev, data.f[k], data.f[k + 1])
    um = step(grid, pv - d, u_prev, data.f[k], data.f[k + 1])
    fd = (up - um) / (2 * d)
    mask = np.abs(fd) > 1e-12
    assert np.max(np.abs((s[mask] - fd[mask]) / fd[mask])) < 1e-6


def test_sensitivity_shares_step_matrix():
    # same diagonals as the forward step: solving the assembled system with
    # rhs -tau*u must reproduce the sensitivity solve exactly
    data, exact_u, _ = manufactured(30, 20)
    grid = data.grid
    pv = 0.85
    u_next = step(grid, pv, data.phi, data.f[0], data.f[1])
    s = sensitivity_step(grid, pv, u_next)
    sys = assemble_step(grid, pv, np.zeros(grid.N + 1), np.zeros(grid.N + 1),
                        np.zeros(grid.N + 1))
    from invdiff.tridiag import TridiagonalSystem

    ref = thomas_solve(TridiagonalSystem(sub=sys.sub, diag=sys.diag, sup=sys.sup,
                                         rhs=-grid.tau * u_next[1:-1]))
    assert np.array_equal(s[1:-1], ref)


def test_residual_derivative_zero():
    data, _, _ = manufactured(20, 10)
    assert residual_derivative(np.zeros(21), data) == 0.0


def test_residual_derivative_consistent_with_fd():
    data, exact_u, _ = manufactured(50, 50)
    grid = data.grid
    k, pv = 1, 0.9
    u_prev = exact_u.values[k]

    def F(p):
        return residual(step(grid, p, u_prev, data.f[k], data.f[k + 1]), data, k + 1)

    u_next = step(grid, pv, u_prev, data.f[k], data.f[k + 1])
    Fp = residual_derivative(sensitivity_step(grid, pv, u_next), data)
    d = 1e-6
    fd = (F(pv + d) - F(pv - d)) / (2 * d)
    assert Fp == pytest.approx(fd, rel=1e-6)


def test_residual_derivative_negative_along_solution():
    data, _, _ = manufactured(100, 100)
    field, trace, _ = run_newton(data)
    for k in range(data.grid.M):
        s = sensitivity_step(data.grid, trace.values[k + 1], field.values[k + 1])
        assert residual_derivative(s, data) < 0.0


def test_newton_step_near_guess_converges_fast():
    data, exact_u, exact_p = manufactured(100, 200)
    p, u, iters = newton_step_solve(data, 0, data.phi, exact_p.values[1],
                                    NewtonConfig())
    assert iters <= 2
    assert abs(residual(u, data, 1)) < 1e-12


def test_newton_step_far_guess_converges():
    data, _, _ = manufactured(100, 200)
    p, u, iters = newton_step_solve(data, 0, data.phi, 0.0, NewtonConfig())
    assert iters <= 10
    assert abs(residual(u, data, 1)) < 1e-12


def test_newton_zero_problem_error_path():
    data = zero_problem(20, 10)
    with pytest.raises(NewtonDivergenceError) as exc:
        run_newton(data, NewtonConfig(p_init=0.0))
    err = exc.value
    assert isinstance(err, DerivativeUnderflowError)
    assert err.time_index == 0
    assert err.residual == pytest.approx(-1.0, abs=1e-14)
    assert err.partial_trace is not None and len(err.partial_trace) == 1


def test_run_newton_accuracy():
    data, exact_u, exact_p = manufactured(100, 200)
    field, trace, iters = run_newton(data)
    rep = error_report(field, trace, exact_u, exact_p, data.grid)
    assert rep.er_u <= 1e-8
    # coefficient error absorbs the scheme truncation: (tau^2 + pi^4 h^2)/12,
    # constant over k (measured 8.1177e-4 at this resolution)
    assert rep.er_p == pytest.approx((data.grid.tau**2 + np.pi**4 * data.grid.h**2) / 12,
                                     rel=0.02)
    assert rep.l2_p == pytest.approx(rep.er_p, rel=0.01)
    assert np.all(iters <= 5)


def test_run_newton_warm_start_uses_previous_level():
    data, _, _ = manufactured(100, 100)
    _, _, iters = run_newton(data)
    # warm starts keep the per-step count at the quadratic-convergence floor
    assert np.mean(iters) <= 3.0


def test_converged_constraint_holds_everywhere():
    data, _, _ = manufactured(60, 40)
    cfg = NewtonConfig(tol=1e-12)
    field, trace, _ = run_newton(data, cfg)
    for k in range(1, data.grid.M + 1):
        assert abs(residual(field.values[k], data, k)) < cfg.tol


def test_jacobian_property_seeded():
    # residual_derivative vs central differences on 50 random (grid, p, k)
    rng = np.random.default_rng(42)
    for _ in range(50):
        N = int(rng.integers(10, 101))
        M = int(rng.integers(5, 101))
        data, exact_u, _ = manufactured(N, M)
        grid = data.grid
        k = int(rng.integers(0, M))
        pv = rng.uniform(0.1, 5.0)
        u_prev = exact_u.values[k]

        def F(p):
            return residual(step(grid, p, u_prev, data.f[k], data.f[k + 1]),
                            data, k + 1)

        u_next = step(grid, pv, u_prev, data.f[k], data.f[k + 1])
        Fp = residual_derivative(sensitivity_step(grid, pv, u_next), data)
        d = 1e-6 * max(1.0, abs(pv))
        fd = (F(pv + d) - F(pv - d)) / (2 * d)
        assert abs(Fp - fd) <= 1e-6 * abs(fd)


def test_config_validation():
    with pytest.raises(ValueError):
        NewtonConfig(tol=0.0)
    with pytest.raises(ValueError):
        NewtonConfig(max_iter=0)
