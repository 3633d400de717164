"""Synthetic measurement noise and optional smoothing.

The measurement g and its derivative are perturbed independently; g' is never
recomputed by differencing the noisy g, which would conflate two noise
sources that the experiments keep separate. delta is a relative level (0.01
means "1% noise"), so the default law scales each sample by (1 + delta*xi)
with standard-normal xi.
"""

from dataclasses import dataclass, replace

import numpy as np

from invdiff.model import ProblemData

KINDS = ("gaussian-relative", "gaussian-absolute", "uniform-relative")


@dataclass(frozen=True)
class NoiseSpec:
    delta: float
    seed: int = 0
    kind: str = "gaussian-relative"

    def __post_init__(self):
        if self.delta < 0.0:
            raise ValueError("noise level must be nonnegative")
        if self.kind not in KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; choose from {KINDS}")


def perturb(data: ProblemData, spec: NoiseSpec) -> ProblemData:
    """Return a copy of `data` with noisy g and g'; all other fields shared."""
    rng = np.random.default_rng(spec.seed)
    m = data.g.shape[0]
    if spec.kind == "uniform-relative":
        zeta = rng.uniform(-1.0, 1.0, m)
        xi = rng.uniform(-1.0, 1.0, m)
    else:
        zeta = rng.standard_normal(m)
        xi = rng.standard_normal(m)
    if spec.kind == "gaussian-absolute":
        g = data.g + spec.delta * zeta
        gprime = data.gprime + spec.delta * xi
    else:
        g = data.g * (1.0 + spec.delta * zeta)
        gprime = data.gprime * (1.0 + spec.delta * xi)
    return replace(data, g=g, gprime=gprime)


def smooth(signal, window: int, poly_order: int) -> np.ndarray:
    """Savitzky-Golay smoothing by local least-squares polynomial fits.

    Interior points use the centered window; near the ends the window shrinks
    one-sided (extending inward just enough to keep poly_order+1 points), so
    polynomials of degree <= poly_order are reproduced exactly everywhere.
    """
    signal = np.asarray(signal, dtype=float)
    n = signal.shape[0]
    if window % 2 != 1 or window < 1:
        raise ValueError("window must be a positive odd count")
    if poly_order < 0 or poly_order >= window:
        raise ValueError("polynomial order must satisfy 0 <= order < window")
    if window > n:
        raise ValueError(f"window {window} exceeds signal length {n}")

    hw = window // 2
    out = np.empty(n)
    for i in range(n):
        lo = max(0, i - hw)
        hi = min(n - 1, i + hw)
        while hi - lo + 1 < poly_order + 1:
            if lo > 0:
                lo -= 1
            else:
                hi += 1
        idx = np.arange(lo, hi + 1)
        basis = np.vander(idx - i, poly_order + 1, increasing=True)
        coef, *_ = np.linalg.lstsq(basis, signal[lo : hi + 1], rcond=None)
        out[i] = coef[0]
    return out
