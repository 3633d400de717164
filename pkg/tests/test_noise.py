import numpy as np
import pytest

from invdiff import NoiseSpec, make_grid, manufactured_problem, perturb, smooth


def manufactured(N=50, M=100):
    data, _, _ = manufactured_problem(make_grid(1, 1, N, M))
    return data


def test_zero_noise_is_identity():
    data = manufactured()
    out = perturb(data, NoiseSpec(delta=0.0, seed=3))
    assert np.array_equal(out.g, data.g)
    assert np.array_equal(out.gprime, data.gprime)


def test_fixed_seed_is_reproducible():
    data = manufactured()
    spec = NoiseSpec(delta=0.01, seed=12)
    a = perturb(data, spec)
    b = perturb(data, spec)
    assert np.array_equal(a.g, b.g)
    assert np.array_equal(a.gprime, b.gprime)


def test_different_seeds_differ():
    data = manufactured()
    a = perturb(data, NoiseSpec(delta=0.01, seed=1))
    b = perturb(data, NoiseSpec(delta=0.01, seed=2))
    assert not np.array_equal(a.g, b.g)


def test_relative_scale_of_perturbation():
    # 4-sigma bound: relative deviations stay within 20% at delta = 5%
    data = manufactured()
    for seed in range(20):
        noisy = perturb(data, NoiseSpec(delta=0.05, seed=seed))
        rel = np.max(np.abs(noisy.g - data.g) / np.abs(data.g))
        assert rel <= 0.2
        assert rel > 0.0


def test_only_measurement_fields_change():
    data = manufactured()
    noisy = perturb(data, NoiseSpec(delta=0.03, seed=4))
    assert np.array_equal(noisy.phi, data.phi)
    assert np.array_equal(noisy.f, data.f)
    assert np.array_equal(noisy.omega, data.omega)
    assert np.array_equal(noisy.omega_xx, data.omega_xx)
    assert not np.array_equal(noisy.g, data.g)
    assert not np.array_equal(noisy.gprime, data.gprime)


def test_g_and_gprime_noise_independent():
    data = manufactured()
    noisy = perturb(data, NoiseSpec(delta=0.01, seed=9))
    zg = (noisy.g / data.g - 1.0) / 0.01
    zp = (noisy.gprime / data.gprime - 1.0) / 0.01
    assert abs(np.corrcoef(zg, zp)[0, 1]) < 0.5


def test_noise_kinds():
    data = manufactured()
    for kind in ("gaussian-relative", "gaussian-absolute", "uniform-relative"):
        noisy = perturb(data, NoiseSpec(delta=0.01, seed=5, kind=kind))
        assert np.all(np.isfinite(noisy.g))
    with pytest.raises(ValueError):
        NoiseSpec(delta=0.01, kind="pink")
    with pytest.raises(ValueError):
        NoiseSpec(delta=-0.1)


def test_smooth_reproduces_polynomials():
    t = np.linspace(0, 1, 41)
    for order, window in ((2, 5), (3, 11), (1, 7)):
        signal = 1.0 + 2.0 * t - 0.5 * t**order
        out = smooth(signal, window, order)
        assert np.max(np.abs(out - signal)) < 1e-10


def test_smooth_constant_unchanged():
    out = smooth(np.full(20, 3.25), 5, 2)
    assert np.max(np.abs(out - 3.25)) < 1e-12


def test_smooth_is_linear():
    rng = np.random.default_rng(8)
    x = rng.uniform(-1, 1, 30)
    y = rng.uniform(-1, 1, 30)
    a, b = 1.7, -0.3
    lhs = smooth(a * x + b * y, 7, 2)
    rhs = a * smooth(x, 7, 2) + b * smooth(y, 7, 2)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_smooth_reduces_noise_deviation():
    data = manufactured()
    noisy = perturb(data, NoiseSpec(delta=0.03, seed=5))
    smoothed = smooth(noisy.g, 11, 3)
    raw_dev = np.max(np.abs(noisy.g - data.g))
    smooth_dev = np.max(np.abs(smoothed - data.g))
    assert smooth_dev < raw_dev


def test_smooth_validation():
    sig = np.zeros(10)
    with pytest.raises(ValueError):
        smooth(sig, 4, 2)  # even window
    with pytest.raises(ValueError):
        smooth(sig, 5, 5)  # order >= window
    with pytest.raises(ValueError):
        smooth(sig, 11, 2)  # window longer than signal
