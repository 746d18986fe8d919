"""The approximants g_n and explicit bounds on |G - G_n| over a disc.

For |z| <= M the gap splits at a point t1 into a head term, bounded by
2 e^{M t1} / (M n), and a tail term bounded by 2 int_{t1}^inf e^{-q + M t} dt
independently of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernel as kn
from .errors import NTooSmall
from .kernel import KernelSpec
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate
from .parallel import ordered_map
from .transform import ComplexPoint, g_n, transform_for


@dataclass(frozen=True)
class ApproximantParams:
    n: int
    lam: float

    @classmethod
    def for_kernel(cls, spec: KernelSpec, n: int) -> "ApproximantParams":
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        return cls(int(n), kn.lambda_n(spec, n))


@dataclass(frozen=True)
class ConvergenceBound:
    M: float
    t1: float
    n_min: int
    epsilon: float
    Jn_bound: float
    Kn_bound: float

    def holds(self) -> bool:
        return self.Jn_bound < self.epsilon / 2 and self.Kn_bound < self.epsilon / 2


def g_n_eval(spec: KernelSpec, params: ApproximantParams, t):
    return g_n(spec, params.n, params.lam)(np.asarray(t, dtype=float))


def difference(spec: KernelSpec, params: ApproximantParams, t):
    """d_n(t) = exp(-q(t)) - g_n(t), nonnegative and nonincreasing on [0, lambda_n]."""
    return kn.exp_neg_q(spec, t) - g_n_eval(spec, params, t)


def envelope_check(spec: KernelSpec, params: ApproximantParams, t) -> bool:
    """True iff 0 <= g_n(t) <= exp(-q(t)) at every given t."""
    g = g_n_eval(spec, params, t)
    return bool(np.all((g >= 0) & (g <= kn.exp_neg_q(spec, t))))


def kn_bound(spec: KernelSpec, M: float, t1: float,
             settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """2 int_{t1}^inf exp(-q(t) + M t) dt, an upper bound for every K_n."""
    if not (M > 0 and t1 > 0):
        raise ValueError("M and t1 must be positive")

    def decay(t):
        return kn.q_eval(spec, t) - M * t

    # walk out until the integrand is e^-40 below the smallest decay seen
    lowest = decay(t1)
    upper, step = t1, max(t1, 1.0) / 8
    while True:
        upper += step
        d = decay(upper)
        lowest = min(lowest, d)
        if d >= lowest + 40.0 and d > decay(upper - step):
            break
    # relative accuracy only: the value itself may be far below abs_tol
    fine = replace(settings, abs_tol=1e-300)
    value, _ = integrate(lambda t: np.exp(-decay(t)), t1, upper, fine)
    h = 1e-3 * upper
    slope = (decay(upper) - decay(upper - h)) / h
    tail = math.exp(-decay(upper)) / slope
    return 2.0 * (value + tail)


def jn_bound(M: float, t1: float, n: int, spec: KernelSpec | None = None) -> float:
    """2 e^{M t1} / (M n), the head bound; needs n > q(t1) when ``spec`` is given."""
    if not (M > 0 and t1 > 0 and n >= 1):
        raise ValueError("M, t1 and n must be positive")
    if spec is not None and n <= kn.q_eval(spec, t1):
        raise NTooSmall(f"n = {n} does not exceed q(t1) = {kn.q_eval(spec, t1):g}")
    return 2.0 * math.exp(M * t1) / (M * n)


def n_for_epsilon(spec: KernelSpec, M: float, epsilon: float,
                  settings: QuadratureSettings = DEFAULT_SETTINGS) -> ConvergenceBound:
    """Smallest power-of-two t1 with K-bound < eps/2, then n past both thresholds."""
    if not (M > 0 and epsilon > 0):
        raise ValueError("M and epsilon must be positive")
    t1 = 2.0 ** -4
    k_b = kn_bound(spec, M, t1, settings)
    while k_b >= epsilon / 2:
        t1 *= 2.0
        k_b = kn_bound(spec, M, t1, settings)
    n_min = math.ceil(max(kn.q_eval(spec, t1), 4.0 * math.exp(M * t1) / (M * epsilon))) + 1
    return ConvergenceBound(M, t1, n_min, epsilon, jn_bound(M, t1, n_min, spec), k_b)


def disc_grid(M: float, grid_size: int) -> list[ComplexPoint]:
    """Polar grid: ``grid_size`` radii up to M times ``grid_size`` angles."""
    if M == 0 or grid_size < 1:
        return [ComplexPoint(0.0, 0.0)]
    pts = []
    for i in range(1, grid_size + 1):
        r = M * i / grid_size
        for j in range(grid_size):
            pts.append(ComplexPoint.from_complex(r * np.exp(2j * math.pi * j / grid_size)))
    return pts


def empirical_gap(spec: KernelSpec, n: int, M: float, grid_size: int = 5,
                  settings: QuadratureSettings = DEFAULT_SETTINGS,
                  with_error: bool = False):
    """max |G(z) - G_n(z)| over a polar grid of the disc |z| <= M.

    With ``with_error`` returns ``(gap, error_band)`` where the band is the
    summed quadrature error at the maximizing point.
    """
    G = transform_for(spec, None, settings)
    Gn = transform_for(spec, n, settings)

    def gap_at(z):
        a, b = G(z), Gn(z)
        return abs(a.value - b.value), a.error_estimate + b.error_estimate

    results = ordered_map(gap_at, disc_grid(M, grid_size))
    gap, err = max(results, key=lambda r: r[0])
    return (gap, err) if with_error else gap


__all__ = [
    "ApproximantParams", "ConvergenceBound", "g_n_eval", "difference",
    "envelope_check", "kn_bound", "jn_bound", "n_for_epsilon", "disc_grid",
    "empirical_gap",
]
