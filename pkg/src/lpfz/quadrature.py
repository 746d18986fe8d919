"""Real-valued adaptive quadrature for smooth, possibly oscillatory integrands.

Every transform in the package reduces to integrals of the form

    int_0^inf f(t) * exp(sigma t) * cos(w t) dt      (or sin)

with f decaying faster than any exponential.  The semi-infinite range is
truncated where an exponential majorant of the tail drops below a budget,
and the finite part is integrated with Gauss-Kronrod (7, 15) panels that are
bisected until the summed error estimate meets the tolerance.  Initial
panels are never wider than half an oscillation period.

Integrands must accept numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import MaxSubdivisionsExceeded, NoDecay, NonFinite

_EPS = np.finfo(float).eps

# Kronrod abscissae on [0, 1] (mirrored), Kronrod weights, Gauss weights for
# the odd-indexed abscissae (the 7-point Gauss rule).
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 nodes, ascending
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")

    def tail_budget(self) -> float:
        return 0.1 * self.abs_tol


DEFAULT_SETTINGS = QuadratureSettings()


@dataclass(frozen=True)
class IntegralValue:
    value: float
    error_estimate: float
    truncation_point: float


def _gk15(f, a, b):
    """Kronrod value, error estimate and |f| integral for panels [a_i, b_i]."""
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    x = center[:, None] + half[:, None] * NODES[None, :]
    fx = np.asarray(f(x), dtype=float)
    if fx.shape != x.shape:
        fx = np.broadcast_to(fx, x.shape)
    if not np.all(np.isfinite(fx)):
        raise NonFinite("integrand returned a non-finite value")
    kron = half * (fx @ KRONROD_WEIGHTS)
    gauss = half * (fx @ GAUSS_WEIGHTS)
    resabs = np.abs(half) * (np.abs(fx) @ KRONROD_WEIGHTS)
    mean = kron / np.where(half == 0, 1.0, 2.0 * half)
    resasc = np.abs(half) * (np.abs(fx - mean[:, None]) @ KRONROD_WEIGHTS)
    diff = np.abs(kron - gauss)
    # QUADPACK's scaling of |K - G|, floored at the roundoff level
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(
            (resasc != 0) & (diff != 0),
            resasc * np.minimum(1.0, (200.0 * diff / resasc) ** 1.5),
            diff,
        )
    floor = 50.0 * _EPS * resabs
    err = np.maximum(scaled, floor)
    return kron, err, floor


def _adaptive(f, edges: np.ndarray, settings: QuadratureSettings):
    a, b = edges[:-1].astype(float), edges[1:].astype(float)
    kron, err, floor = _gk15(f, a, b)
    length = float(edges[-1] - edges[0])
    splits = 0
    while True:
        order = np.argsort(a, kind="stable")
        a, b, kron, err, floor = a[order], b[order], kron[order], err[order], floor[order]
        total = math.fsum(kron)
        err_total = math.fsum(err)
        target = max(settings.abs_tol, settings.rel_tol * abs(total))
        if err_total <= target:
            break
        share = target * (b - a) / length
        refinable = (err > share) & (err > 2.0 * floor)
        if not refinable.any():
            # roundoff limited: the estimate stands as computed
            break
        idx = np.flatnonzero(refinable)
        splits += idx.size
        if splits > settings.max_subdivisions:
            raise MaxSubdivisionsExceeded(
                f"{splits} subdivisions, error {err_total:.3e} > target {target:.3e}")
        mid = 0.5 * (a[idx] + b[idx])
        new_a = np.concatenate([a[idx], mid])
        new_b = np.concatenate([mid, b[idx]])
        k2, e2, f2 = _gk15(f, new_a, new_b)
        keep = ~refinable
        a = np.concatenate([a[keep], new_a])
        b = np.concatenate([b[keep], new_b])
        kron = np.concatenate([kron[keep], k2])
        err = np.concatenate([err[keep], e2])
        floor = np.concatenate([floor[keep], f2])
    return total, err_total


def _panel_edges(lo: float, hi: float, w: float) -> np.ndarray:
    width = math.pi / max(abs(w), 1.0)
    count = max(1, int(math.ceil((hi - lo) / width)))
    return np.linspace(lo, hi, count + 1)


def _with_trig(f, w: float, mode: str, sigma: float = 0.0):
    if mode not in ("cos", "sin"):
        raise ValueError(f"mode must be 'cos' or 'sin', got {mode!r}")
    trig = np.cos if mode == "cos" else np.sin

    def g(t):
        v = f(t) * trig(w * t)
        if sigma:
            v = v * np.exp(sigma * t)
        return v

    return g


def truncation_point(decay: Callable[[float], float], tail_budget: float,
                     t_max: float = 1e6) -> float:
    """Return T with int_T^inf exp(-decay(t)) dt <= tail_budget.

    The tail is bounded by exp(-decay(T) - c (t - T)) with c a backward
    difference slope of ``decay`` at T, valid once ``decay`` is convex.
    """
    if not tail_budget > 0:
        raise ValueError("tail_budget must be positive")

    def bound(t):
        h = 1e-3 * max(t, 1e-3)
        d_hi = float(decay(t))
        if d_hi == math.inf:
            return 0.0
        slope = (d_hi - float(decay(t - h))) / h
        if not slope > 0:
            return math.inf
        return math.exp(-d_hi) / slope

    hi = 1.0
    while bound(hi) > tail_budget:
        hi *= 2.0
        if hi > t_max:
            raise NoDecay(f"decay not eventually increasing below t = {t_max:g}")
    lo = 0.0
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if bound(mid) <= tail_budget:
            hi = mid
        else:
            lo = mid
    return hi


def _decay_from(f, sigma: float):
    def decay(t):
        v = abs(float(np.asarray(f(np.asarray([t], dtype=float)))[0]))
        return math.inf if v == 0 else -math.log(v) - sigma * t
    return decay


def integrate_decaying(f, sigma: float, w: float, mode: str,
                       settings: QuadratureSettings = DEFAULT_SETTINGS,
                       decay=None) -> IntegralValue:
    """int_0^inf f(t) exp(sigma t) {cos, sin}(w t) dt.

    ``decay`` overrides the truncation decay; by default it is
    ``-log|f(t)| - sigma t``.  The caller supplies a decay that is eventually
    increasing (true for every admissible kernel).
    """
    if decay is None:
        decay = _decay_from(f, sigma)
    budget = settings.tail_budget()
    T = truncation_point(decay, budget)
    value, err = _adaptive(_with_trig(f, w, mode, sigma), _panel_edges(0.0, T, w), settings)
    return IntegralValue(value, err + budget, T)


def integrate_finite(f, lo: float, hi: float, w: float, mode: str,
                     settings: QuadratureSettings = DEFAULT_SETTINGS) -> IntegralValue:
    """int_lo^hi f(t) {cos, sin}(w t) dt."""
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    value, err = _adaptive(_with_trig(f, w, mode), _panel_edges(lo, hi, w), settings)
    return IntegralValue(value, err, hi)


def integrate(f, lo: float, hi: float,
              settings: QuadratureSettings = DEFAULT_SETTINGS,
              w: float = 0.0) -> tuple[float, float]:
    """Plain adaptive integral of a vectorized ``f`` over [lo, hi].

    ``w`` only sets the initial panel width (for integrands that oscillate
    at frequency ``w`` through their own construction).
    """
    return _adaptive(f, _panel_edges(lo, hi, w), settings)
