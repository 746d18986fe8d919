"""Off-axis Taylor coefficients of |F|^2 and the monotone growth they imply.

For an entire F with real Taylor coefficients that is even,

    |F(w - i s)|^2 = 1/2 sum_m s^(2m) / (2m)! * B_m(w),
    B_m(w) = (-1)^m 2 d^(2m)/du^(2m) [F(u + w) F(u - w)] at u = 0.

Nonnegative B_m for every m makes |F|^2 nondecreasing in |s|.  For a real
rooted even polynomial the analogous coefficients are computed exactly in
rational arithmetic; for transforms they come from ring averages of
Phi_w(u) = F(u + w) F(u - w) on |u| = rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import RingTooLarge, TailNotConverged
from .parallel import ordered_map
from .transform import ComplexPoint, ComplexValue


@dataclass(frozen=True)
class EvenPolynomial:
    """sum_j coeffs[j] * z^(2j); coefficients are Fractions for exact work."""

    coeffs: tuple

    @classmethod
    def from_roots(cls, c, alphas, imaginary_pairs=()) -> "EvenPolynomial":
        """c * prod (1 - z^2/alpha^2) * prod (1 + z^2/beta^2).

        The second factor (zeros at +/- i beta) is for negative controls.
        """
        poly = [Fraction(c)]
        for a in alphas:
            poly = _mul_even(poly, [Fraction(1), -1 / Fraction(a) ** 2])
        for b in imaginary_pairs:
            poly = _mul_even(poly, [Fraction(1), 1 / Fraction(b) ** 2])
        return cls(tuple(poly))

    @property
    def degree_half(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        z2 = z * z
        out = 0
        for c in reversed(self.coeffs):
            out = out * z2 + c
        return out


def _mul_even(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _shift(full, w):
    """Coefficients in u of p(u + w) for p given by its full coefficient list."""
    deg = len(full) - 1
    out = [Fraction(0)] * (deg + 1)
    for d, c in enumerate(full):
        if c == 0:
            continue
        wp = Fraction(1)
        for i in range(d, -1, -1):
            # term c * C(d, i) * w^(d - i) * u^i
            out[i] += c * math.comb(d, i) * wp
            wp *= w
    return out


@lru_cache(maxsize=4096)
def _t_all(coeffs: tuple, w: Fraction) -> tuple:
    full = []
    for c in coeffs:
        full.extend([Fraction(c), Fraction(0)])
    full = full[:-1]
    plus, minus = _shift(full, w), _shift(full, -w)
    prod = [Fraction(0)] * (len(plus) + len(minus) - 1)
    for i, a in enumerate(plus):
        if a == 0:
            continue
        for j, b in enumerate(minus):
            prod[i + j] += a * b
    return tuple((-1) ** m * 2 * math.factorial(2 * m) * prod[2 * m]
                 for m in range(len(prod) // 2 + 1))


def t_coeff_exact(P: EvenPolynomial, m: int, w) -> Fraction:
    """(-1)^m 2 (2m)! [u^(2m)] P(u + w) P(u - w), exactly."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    table = _t_all(tuple(Fraction(c) for c in P.coeffs), Fraction(w))
    return table[m] if m < len(table) else Fraction(0)


@dataclass(frozen=True)
class BCoefficient:
    value: float
    error_band: float
    ring_radius: float

    @property
    def conclusive(self) -> bool:
        return abs(self.value) > 3.0 * self.error_band


def _ring_size(max_m: int) -> int:
    need = max(4 * max_m + 8, 32)
    return 1 << (need - 1).bit_length()


def _ring_coefficients(G_eval, w: float, rho: float, K: int):
    """Taylor coefficients of Phi_w on |u| = rho with error bands.

    F even gives F(u - w) = F(w - u) = F(w + u') at the antipodal sample u',
    so K evaluations of F cover both factors.
    """
    u = rho * np.exp(2j * math.pi * np.arange(K) / K)
    vals = ordered_map(G_eval, [ComplexPoint.from_complex(w + x) for x in u])
    g = np.array([v.value for v in vals])
    e = np.array([v.error_estimate for v in vals])
    anti = (np.arange(K) + K // 2) % K
    phi = g * g[anti]
    phi_err = np.abs(g) * e[anti] + np.abs(g[anti]) * e + e * e[anti]
    spec = np.fft.fft(phi) / K
    # orders near K/2 should be negligible; their size bounds the aliasing
    mid = np.abs(spec[3 * K // 8: 5 * K // 8 + 1]).max()
    scale = np.abs(phi).max()
    if mid > 1e-8 * scale:
        raise RingTooLarge(f"ring radius {rho:g}: Taylor series not resolved by {K} samples")
    return spec, phi_err.mean() + mid


def b_coeff(G_eval, m: int, w: float, ring_radius: float = 0.5,
            ring_samples: int | None = None) -> BCoefficient:
    """B_m(w) from the ring average of Phi_w."""
    K = ring_samples or _ring_size(m)
    if K & (K - 1) or K < 4 * m + 8:
        raise ValueError("ring_samples must be a power of two >= 4m + 8")
    spec, noise = _ring_coefficients(G_eval, w, ring_radius, K)
    return _b_from(spec, noise, m, ring_radius)


def _b_from(spec, noise, m, rho):
    scale = 2.0 * math.factorial(2 * m) / rho ** (2 * m)
    c = spec[2 * m]
    value = (-1) ** m * scale * c.real
    band = scale * (noise + abs(c.imag))
    return BCoefficient(float(value), float(band), rho)


@dataclass(frozen=True)
class CoefficientTable:
    w: float
    values: tuple[float, ...]
    error_bands: tuple[float, ...]
    ring_radii: tuple[float, ...]
    n_or_N: int | None
    max_m: int

    @property
    def conclusive(self) -> tuple[bool, ...]:
        return tuple(abs(v) > 3.0 * b for v, b in zip(self.values, self.error_bands))

    def conclusively_negative(self) -> list[int]:
        return [m for m, (v, b) in enumerate(zip(self.values, self.error_bands)) if v < -3.0 * b]

    def has_positive_entry(self) -> bool:
        return any(c and v > 0 for c, v in zip(self.conclusive, self.values))

    def rows(self):
        return [(self.w, m, v, b, c) for m, (v, b, c) in
                enumerate(zip(self.values, self.error_bands, self.conclusive))]


def b_table(G_eval, w: float, max_m: int, ring_radius: float = 0.5,
            n_or_N: int | None = None, retries: int = 3) -> CoefficientTable:
    """B_0 .. B_max_m at w; inconclusive entries retried on a larger ring."""
    if max_m < 0:
        raise ValueError("max_m must be nonnegative")
    K = _ring_size(max_m)
    best: list[BCoefficient | None] = [None] * (max_m + 1)
    rho = ring_radius
    tried = 0
    while tried <= retries:
        try:
            spec, noise = _ring_coefficients(G_eval, w, rho, K)
        except RingTooLarge:
            rho /= 2.0
            tried += 1
            continue
        for m in range(max_m + 1):
            cand = _b_from(spec, noise, m, rho)
            cur = best[m]
            if cur is None or _quality(cand) > _quality(cur):
                best[m] = cand
        if all(b is not None and b.conclusive for b in best):
            break
        # amplification rho^-2m of the noise shrinks on a larger ring
        rho *= 2.0
        tried += 1
    if any(b is None for b in best):
        raise RingTooLarge(f"no usable ring radius near {ring_radius:g} at w = {w:g}")
    return CoefficientTable(
        float(w), tuple(b.value for b in best), tuple(b.error_band for b in best),
        tuple(b.ring_radius for b in best), n_or_N, max_m)


def _quality(b: BCoefficient) -> float:
    if b.error_band == 0:
        return math.inf
    return abs(b.value) / b.error_band


def series_reconstruct(table: CoefficientTable, sigma: float, rel_tol: float = 1e-7) -> float:
    """1/2 sum_m sigma^(2m)/(2m)! B_m, with a ratio test on the last two terms."""
    terms = [0.5 * sigma ** (2 * m) / math.factorial(2 * m) * v
             for m, v in enumerate(table.values)]
    total = math.fsum(terms)
    if len(terms) >= 2 and sigma != 0:
        last, prev = abs(terms[-1]), abs(terms[-2])
        if prev == 0:
            tail = last
        else:
            r = last / prev
            if r >= 1:
                raise TailNotConverged(f"term ratio {r:.3g} >= 1 at sigma = {sigma:g}")
            tail = last * r / (1 - r)
        if tail > rel_tol * abs(total) + 1e-300:
            raise TailNotConverged(f"estimated tail {tail:.3g} exceeds {rel_tol:g} relative")
    return total


@dataclass
class MonotonicityReport:
    rows: list[tuple[float, float, float, float]]
    violations: list[tuple[float, float, float, float, float]]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"points": len(self.rows), "violations": [
            {"w": w, "sigma_from": s0, "sigma_to": s1, "drop": d, "band": b}
            for w, s0, s1, d, b in self.violations]}


def monotonicity_scan(F, w_grid, sigma_grid) -> MonotonicityReport:
    """|F(w - i s)|^2 along increasing s for every w; drops beyond error bands are violations."""
    sigma_grid = [float(s) for s in sigma_grid]
    if not sigma_grid or sigma_grid[0] != 0 or any(b <= a for a, b in zip(sigma_grid, sigma_grid[1:])):
        raise ValueError("sigma_grid must be increasing and start at 0")
    rows, violations = [], []
    for w in w_grid:
        vals = ordered_map(F, [ComplexPoint(float(w), s) for s in sigma_grid])
        seq = []
        for s, v in zip(sigma_grid, vals):
            mod = abs(v)
            band = 2.0 * mod * v.error_estimate + v.error_estimate ** 2
            seq.append((float(w), s, mod * mod, band))
        rows.extend(seq)
        for (_, s0, v0, b0), (_, s1, v1, b1) in zip(seq, seq[1:]):
            if v1 < v0 - (b0 + b1):
                violations.append((float(w), s0, s1, v0 - v1, b0 + b1))
    return MonotonicityReport(rows, violations)


def negative_control(z) -> ComplexValue:
    """F(z) = z^2 + 1: zeros at +/- i, so |F|^2 falls as sigma rises from 0 at w = 0."""
    z = z.z if isinstance(z, ComplexPoint) else complex(z)
    v = z * z + 1
    return ComplexValue(v.real, v.imag, 0.0)
