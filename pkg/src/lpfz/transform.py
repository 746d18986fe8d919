"""Complex Fourier transforms of admissible kernels and their relatives.

With z = w - i*sigma and an even real kernel f,

    int f(t) exp(i z t) dt = 2 int_0^inf f(t) cosh(sigma t) cos(w t) dt
                           + 2i int_0^inf f(t) sinh(sigma t) sin(w t) dt,

so every transform is assembled from two real half-line integrals.  On the
real axis the imaginary part is exactly zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernel as kn
from .kernel import KernelSpec
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    integrate,
    integrate_decaying,
    integrate_finite,
    truncation_point,
)


@dataclass(frozen=True)
class ComplexPoint:
    """The point z = w - i*sigma."""

    w: float
    sigma: float = 0.0

    @property
    def z(self) -> complex:
        return complex(self.w, -self.sigma)

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPoint":
        z = complex(z)
        return cls(z.real, -z.imag)

    def __neg__(self) -> "ComplexPoint":
        return ComplexPoint(-self.w, -self.sigma)


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float = 0.0
    error_estimate: float = 0.0

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def __mul__(self, other: "ComplexValue") -> "ComplexValue":
        v = self.value * other.value
        err = (abs(self) * other.error_estimate + abs(other) * self.error_estimate
               + self.error_estimate * other.error_estimate)
        return ComplexValue(v.real, v.imag, err)

    def conjugate(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im, self.error_estimate)


Transform = Callable[[ComplexPoint], ComplexValue]


@dataclass(frozen=True)
class ExtendedKernel:
    """Convolution of the kernels exp(-q_j); one component is the basis class."""

    components: tuple[KernelSpec, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("an extended kernel needs at least one component")
        for c in self.components:
            kn.validate(c)

    @classmethod
    def of(cls, *specs: KernelSpec) -> "ExtendedKernel":
        return cls(tuple(specs))

    def label(self) -> str:
        return " * ".join(c.label() for c in self.components)


def _as_point(z) -> ComplexPoint:
    return z if isinstance(z, ComplexPoint) else ComplexPoint.from_complex(z)


def _hyperbolic_weights(f, sigma: float):
    """Integrands f(t)cosh(sigma t) and f(t)sinh(sigma t), overflow-safe."""
    if sigma == 0:
        return f, None

    def even(t):
        lf = _logf(f, t)
        return 0.5 * (np.exp(lf + sigma * t) + np.exp(lf - sigma * t))

    def odd(t):
        lf = _logf(f, t)
        return 0.5 * (np.exp(lf + sigma * t) - np.exp(lf - sigma * t))

    return even, odd


def _logf(f, t):
    with np.errstate(divide="ignore"):
        return np.log(f(t))


def _even_transform(f, z: ComplexPoint, settings, *, finite=None, decay=None) -> ComplexValue:
    """Transform of an even nonnegative f, supported on [-L, L] when ``finite=L``."""
    w, sigma = z.w, z.sigma
    even, odd = _hyperbolic_weights(f, sigma)
    if finite is not None:
        re = integrate_finite(even, 0.0, finite, w, "cos", settings)
    else:
        re = integrate_decaying(even, 0.0, w, "cos", settings, decay=decay)
    err = 2.0 * re.error_estimate
    im = 0.0
    if odd is not None and w != 0:
        if finite is not None:
            iv = integrate_finite(odd, 0.0, finite, w, "sin", settings)
        else:
            iv = integrate_decaying(odd, 0.0, w, "sin", settings, decay=decay)
        im = 2.0 * iv.value
        err += 2.0 * iv.error_estimate
    return ComplexValue(2.0 * re.value, im, err)


def _kernel_decay(spec: KernelSpec, sigma: float):
    s = abs(sigma)
    return lambda t: kn.q_eval(spec, t) - s * t


def cft(spec: KernelSpec, z, settings: QuadratureSettings = DEFAULT_SETTINGS) -> ComplexValue:
    """G(z) = int exp(-q(t)) exp(i z t) dt."""
    z = _as_point(z)
    return _even_transform(lambda t: kn.exp_neg_q(spec, t), z, settings,
                           decay=_kernel_decay(spec, z.sigma))


def g_n(spec: KernelSpec, n: int, lam: float):
    """Vectorized approximant (n/(n+1)) (1 - q/n)^(n+1) on [-lam, lam]."""
    ratio = n / (n + 1.0)

    def g(t):
        q = kn.q_eval(spec, t)
        x = np.minimum(np.asarray(q, dtype=float) / n, 1.0)
        with np.errstate(divide="ignore"):
            v = ratio * np.exp((n + 1.0) * np.log1p(-x))
        return np.where(np.abs(t) <= lam, v, 0.0)

    return g


def cft_approx(spec: KernelSpec, n: int, z,
               settings: QuadratureSettings = DEFAULT_SETTINGS) -> ComplexValue:
    """G_n(z), the transform of the compactly supported approximant g_n."""
    z = _as_point(z)
    lam = kn.lambda_n(spec, n)
    return _even_transform(g_n(spec, n, lam), z, settings, finite=lam)


def f2k(k: int, z, settings: QuadratureSettings = DEFAULT_SETTINGS) -> ComplexValue:
    """F_{2k}(z) = int exp(-y^(2k)) exp(i z y) dy."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    return cft(KernelSpec.parametric(k=1.0, m=k), z, settings)


def hn(spec: KernelSpec, n: int, z,
       settings: QuadratureSettings = DEFAULT_SETTINGS) -> ComplexValue:
    """H_n(z) = G_n(z) F_4(z), the transform of g_n convolved with exp(-t^4)."""
    return cft_approx(spec, n, z, settings) * f2k(2, z, settings)


def convolve_kernels(ext: ExtendedKernel, t: float,
                     settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """c(t) = int exp(-q1(v)) exp(-q2(t - v)) dv for a two-component kernel."""
    return convolve_kernels_with_error(ext, t, settings)[0]


def convolve_kernels_with_error(ext: ExtendedKernel, t: float,
                                settings: QuadratureSettings = DEFAULT_SETTINGS):
    if len(ext.components) != 2:
        raise ValueError("convolve_kernels takes exactly two components")
    q1, q2 = ext.components
    budget = settings.tail_budget()
    # exp(-q2) <= 1, so q1 alone bounds the tail; widen to cover the q2 bump at t
    V = truncation_point(lambda v: kn.q_eval(q1, v), budget)
    V = max(V, abs(t) + truncation_point(lambda v: kn.q_eval(q2, v), budget))

    def integrand(v):
        return np.exp(-kn.q_eval(q1, v) - kn.q_eval(q2, t - v))

    edges = sorted({-V, min(0.0, t), max(0.0, t), V})
    total, err = 0.0, 2.0 * budget
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi > lo:
            v, e = integrate(integrand, lo, hi, settings)
            total += v
            err += e
    return total, err


def cft_extended(ext: ExtendedKernel, z,
                 settings: QuadratureSettings = DEFAULT_SETTINGS) -> ComplexValue:
    """Transform of the iterated convolution, as the product of component transforms."""
    z = _as_point(z)
    out = None
    for c in ext.components:
        v = cft(c, z, settings)
        out = v if out is None else out * v
    return out


def transform_of_even(f, z, settings: QuadratureSettings = DEFAULT_SETTINGS, *,
                      support: float | None = None, decay=None) -> ComplexValue:
    """Transform of an arbitrary even, nonnegative, vectorized ``f``.

    Used for oracle paths (convolutions, h_n) where f is only known pointwise.
    """
    return _even_transform(f, _as_point(z), settings, finite=support, decay=decay)


def transform_for(obj, n: int | None = None,
                  settings: QuadratureSettings = DEFAULT_SETTINGS) -> Transform:
    """Evaluator z -> ComplexValue for a kernel, an extended kernel or G_n."""
    if isinstance(obj, ExtendedKernel):
        if len(obj.components) == 1 and n is None:
            obj = obj.components[0]
        else:
            return lambda z: cft_extended(obj, z, settings)
    if not isinstance(obj, KernelSpec):
        raise TypeError(f"cannot build a transform for {type(obj).__name__}")
    if n is None:
        return lambda z: cft(obj, z, settings)
    lam = kn.lambda_n(obj, n)
    g = g_n(obj, n, lam)
    return lambda z: _even_transform(g, _as_point(z), settings, finite=lam)


def hn_transform(spec: KernelSpec, n: int,
                 settings: QuadratureSettings = DEFAULT_SETTINGS) -> Transform:
    gn = transform_for(spec, n, settings)
    f4 = KernelSpec.parametric(m=2)
    return lambda z: gn(_as_point(z)) * cft(f4, z, settings)


def real_axis(F: Transform):
    """Restrict a transform to the real axis: w -> (value, error_estimate)."""
    def f(w):
        v = F(ComplexPoint(float(w), 0.0))
        return v.re, v.error_estimate
    return f


def evaluate_many(F: Transform, points: Sequence[ComplexPoint]) -> list[ComplexValue]:
    """Evaluate F at many points, in parallel when LPFZ_THREADS > 1.

    Results come back in input order, so downstream reductions are
    deterministic regardless of thread count.
    """
    from .parallel import ordered_map
    return ordered_map(F, points)
