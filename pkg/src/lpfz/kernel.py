"""Admissible kernels q(t) and the scalar machinery built on them.

A kernel is either the parametric family

    q(t) = k * t**(2m) * exp(mu * t**2) * prod_j (1 + t**2 / beta_j**2)

with finitely many ``beta_j``, or the closed form ``a * (cosh(t) - 1)``.
All evaluators accept scalars or numpy arrays; overflow of q saturates to
``inf`` so that ``exp(-q)`` is exactly zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GrowthTooSlow,
    NegativeMu,
    NonPositiveA,
    NonPositiveBeta,
    NonPositiveK,
    ZeroM,
)


class Form(str, enum.Enum):
    PARAMETRIC = "parametric"
    COSH = "cosh"


@dataclass(frozen=True)
class KernelSpec:
    form: Form = Form.PARAMETRIC
    k: float = 1.0
    m: int = 2
    mu: float = 0.0
    betas: tuple[float, ...] = field(default_factory=tuple)
    a: float = 1.0

    @classmethod
    def parametric(cls, k=1.0, m=2, mu=0.0, betas=()) -> "KernelSpec":
        return validate(cls(Form.PARAMETRIC, float(k), int(m), float(mu),
                            tuple(float(b) for b in betas)))

    @classmethod
    def cosh(cls, a=1.0) -> "KernelSpec":
        return validate(cls(Form.COSH, a=float(a)))

    def label(self) -> str:
        if self.form is Form.COSH:
            return f"cosh(a={self.a:g})"
        parts = [f"{self.k:g}*t^{2 * self.m}"]
        if self.mu:
            parts.append(f"exp({self.mu:g}t^2)")
        parts.extend(f"(1+t^2/{b:g}^2)" for b in self.betas)
        return "*".join(parts)

    def to_dict(self) -> dict:
        if self.form is Form.COSH:
            return {"form": self.form.value, "a": self.a}
        return {"form": self.form.value, "k": self.k, "m": self.m,
                "mu": self.mu, "betas": list(self.betas)}


@dataclass(frozen=True)
class GrowthWitness:
    """Constants with q(t) > t**(2 + alpha) for every t >= T."""

    T: float
    alpha: float


def validate(spec: KernelSpec) -> KernelSpec:
    """Return ``spec`` unchanged if it describes an admissible kernel."""
    if spec.form is Form.COSH:
        if not spec.a > 0:
            raise NonPositiveA(f"cosh amplitude must be positive, got {spec.a}")
        return spec
    if not spec.k > 0:
        raise NonPositiveK(f"k must be positive, got {spec.k}")
    if spec.m < 1:
        raise ZeroM(f"m must be at least 1, got {spec.m}")
    if not spec.mu >= 0:
        raise NegativeMu(f"mu must be nonnegative, got {spec.mu}")
    for b in spec.betas:
        if not b > 0:
            raise NonPositiveBeta(f"every beta must be positive, got {b}")
    if spec.m == 1 and spec.mu == 0 and not spec.betas:
        raise GrowthTooSlow("q(t) = k*t^2 has no t^4-or-higher term")
    return spec


def q_eval(spec: KernelSpec, t):
    """Evaluate q at real ``t`` (scalar or array); +inf on overflow."""
    at = np.abs(np.asarray(t, dtype=float))
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.form is Form.COSH:
            s = np.sinh(0.5 * at)
            out = 2.0 * spec.a * s * s
        else:
            out = spec.k * at ** (2 * spec.m)
            if spec.mu:
                out = out * np.exp(spec.mu * at * at)
            for b in spec.betas:
                out = out * (1.0 + (at / b) ** 2)
    out = np.where(np.isnan(out), np.inf, out)
    return float(out) if out.ndim == 0 else out


def q_prime(spec: KernelSpec, t):
    """Derivative of q; odd in t."""
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        if spec.form is Form.COSH:
            out = spec.a * np.sinh(t)
        else:
            t2 = t * t
            base = spec.k * t ** (2 * spec.m - 1)
            if spec.mu:
                base = base * np.exp(spec.mu * t2)
            log_deriv = 2.0 * spec.m + 2.0 * spec.mu * t2
            for b in spec.betas:
                base = base * (1.0 + t2 / (b * b))
                log_deriv = log_deriv + 2.0 * t2 / (b * b + t2)
            out = base * log_deriv
    out = np.where(np.isnan(out), np.copysign(np.inf, t), out)
    return float(out) if out.ndim == 0 else out


def exp_neg_q(spec: KernelSpec, t):
    return np.exp(-q_eval(spec, t))


def lambda_n(spec: KernelSpec, n, tol: float = 1e-12) -> float:
    """The unique positive root of q(t) = n.

    Doubling from t = 1 brackets the root, bisection shrinks the bracket and
    a guarded Newton iteration polishes it.
    """
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    n = float(n)
    lo, hi = 0.0, 1.0
    while q_eval(spec, hi) < n:
        lo, hi = hi, 2.0 * hi
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if q_eval(spec, mid) < n:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    for _ in range(100):
        f = q_eval(spec, t) - n
        if f == 0:
            return t
        if f < 0:
            lo = t
        else:
            hi = t
        t_new = t - f / q_prime(spec, t)
        # a Newton step leaving the bracket falls back to bisection
        if not lo < t_new < hi:
            t_new = 0.5 * (lo + hi)
        if abs(t_new - t) <= tol * max(1.0, t):
            return t_new
        t = t_new
    return t


def _leading_growth_term(spec: KernelSpec) -> tuple[float, int]:
    """Lowest-order positive series coefficient of q with power >= 4.

    Returns ``(coefficient, power)``.  Every Maclaurin coefficient of an
    admissible q is nonnegative, so q(t) >= coefficient * t**power.
    """
    if spec.form is Form.COSH:
        return spec.a / 24.0, 4
    if spec.m >= 2:
        return spec.k, 2 * spec.m
    # m == 1: coefficient of t^4 is k * (mu + sum 1/beta^2)
    return spec.k * (spec.mu + sum(1.0 / (b * b) for b in spec.betas)), 4


def growth_witness(spec: KernelSpec, alpha: float = 1.0) -> GrowthWitness:
    """Constants (T, alpha) with q(t) > t**(2 + alpha) for t >= T.

    For a t^4 coefficient a4 the threshold is (1/a4)**(1/(2 - alpha)); when
    the lowest nonzero higher term is t^p the exponent becomes 1/(p - 2 - alpha).
    """
    if not 0 < alpha < 2:
        raise ValueError("alpha must lie in (0, 2)")
    coeff, power = _leading_growth_term(spec)
    T = (1.0 / coeff) ** (1.0 / (power - 2 - alpha))
    # strict inequality needs T just past the crossing point
    return GrowthWitness(T=T * (1.0 + 1e-9), alpha=alpha)


def series_coefficient_t4(spec: KernelSpec) -> float:
    """Coefficient of t^4 in the Maclaurin series of q."""
    if spec.form is Form.COSH:
        return spec.a / 24.0
    if spec.m == 2:
        return spec.k
    if spec.m > 2:
        return 0.0
    return spec.k * (spec.mu + sum(1.0 / (b * b) for b in spec.betas))


def support_scale(spec: KernelSpec, level: float = 36.0) -> float:
    """Width where exp(-q) drops to exp(-level); a length scale for heuristics."""
    return lambda_n(spec, level, tol=1e-6)


__all__ = [
    "Form", "KernelSpec", "GrowthWitness", "validate", "q_eval", "q_prime",
    "exp_neg_q", "lambda_n", "growth_witness", "series_coefficient_t4",
    "support_scale",
]
