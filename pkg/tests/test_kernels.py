import numpy as np
import pytest

from invdiff._kernels import BACKEND, pure

try:
    from invdiff._kernels import _core
except ImportError:
    _core = None

from helpers import random_dd_system

needs_compiled = pytest.mark.skipif(_core is None, reason="extension not built")


def test_backend_selected():
    assert BACKEND in ("compiled", "pure")


@needs_compiled
def test_thomas_backends_agree():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n = int(rng.integers(1, 120))
        sub, diag, sup, rhs = random_dd_system(rng, n)
        xa = np.empty(n)
        xb = np.empty(n)
        assert _core.thomas(sub, diag, sup, rhs, xa) == -1
        assert pure.thomas(sub, diag, sup, rhs, xb) == -1
        assert np.max(np.abs(xa - xb)) <= 1e-13 * max(1.0, np.max(np.abs(xb)))


@needs_compiled
def test_step_backends_agree():
    rng = np.random.default_rng(23)
    for _ in range(20):
        N = int(rng.integers(3, 80))
        h = 1.0 / N
        tau = rng.uniform(0.001, 0.05)
        u = np.zeros(N + 1)
        u[1:N] = rng.uniform(-1, 1, N - 1)
        fp = np.zeros(N + 1)
        fn = np.zeros(N + 1)
        fp[1:N] = rng.uniform(-1, 1, N - 1)
        fn[1:N] = rng.uniform(-1, 1, N - 1)
        p = rng.uniform(-0.5, 3.0)
        outa = np.empty(N + 1)
        outb = np.empty(N + 1)
        assert _core.cn_step(u, fp, fn, p, h, tau, outa) == -1
        assert pure.cn_step(u, fp, fn, p, h, tau, outb) == -1
        assert np.max(np.abs(outa - outb)) <= 1e-13

        sa = np.empty(N + 1)
        sb = np.empty(N + 1)
        assert _core.sens_solve(outa, p, h, tau, sa) == -1
        assert pure.sens_solve(outb, p, h, tau, sb) == -1
        assert np.max(np.abs(sa - sb)) <= 1e-13

        w = rng.uniform(-1, 1, N + 1)
        assert _core.weighted_dot(outa, w, h) == pytest.approx(
            pure.weighted_dot(outb, w, h), abs=1e-15)


@needs_compiled
def test_zero_pivot_status_parity():
    sub = np.array([2.0])
    diag = np.array([2.0, 1.0])
    sup = np.array([1.0])
    rhs = np.array([1.0, 1.0])
    xa = np.empty(2)
    xb = np.empty(2)
    assert _core.thomas(sub, diag, sup, rhs, xa) == 1
    assert pure.thomas(sub, diag, sup, rhs, xb) == 1


@needs_compiled
def test_assemble_backends_agree():
    rng = np.random.default_rng(29)
    N = 40
    h, tau, p = 1.0 / N, 0.01, 0.7
    u = np.zeros(N + 1)
    u[1:N] = rng.uniform(-1, 1, N - 1)
    f = np.zeros(N + 1)
    f[1:N] = rng.uniform(-1, 1, N - 1)
    da, ra = np.empty(N - 1), np.empty(N - 1)
    db, rb = np.empty(N - 1), np.empty(N - 1)
    _core.cn_assemble(u, f, f, p, h, tau, da, ra)
    pure.cn_assemble(u, f, f, p, h, tau, db, rb)
    assert np.array_equal(da, db)
    assert np.max(np.abs(ra - rb)) <= 1e-15
