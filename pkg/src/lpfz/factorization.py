"""Truncated even products c * prod (1 - z^2 / alpha_r^2) built from certified zeros."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveConstant, NotCertified, UnmatchedDivisorZero
from .parallel import ordered_map
from .transform import ComplexPoint, ComplexValue
from .zeros import ZeroReport


@dataclass(frozen=True)
class ProductRep:
    c: float
    zeros: tuple[float, ...]
    truncation_R: float
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.c > 0:
            raise NonPositiveConstant(f"product constant must be positive, got {self.c}")
        z = self.zeros
        if any(b < a for a, b in zip(z, z[1:])):
            raise ValueError("zeros must be sorted")
        if z and (z[0] <= 0 or z[-1] > self.truncation_R):
            raise ValueError("zeros must lie in (0, truncation_R]")

    def to_dict(self) -> dict:
        return {"c": self.c, "zeros": list(self.zeros), "truncation_R": self.truncation_R,
                "notes": list(self.notes)}


def build_product(F, report: ZeroReport) -> ProductRep:
    if not report.certified:
        raise NotCertified("zero report is not certified; the product would be unfounded")
    f0 = F(ComplexPoint(0.0, 0.0))
    if not f0.re > f0.error_estimate:
        raise NonPositiveConstant(f"F(0) = {f0.re:.6g} is not certifiably positive")
    return ProductRep(f0.re, tuple(report.real_zeros), report.R)


def eval_product(rep: ProductRep, z) -> ComplexValue:
    z = z.z if isinstance(z, ComplexPoint) else complex(z)
    z2 = z * z
    v = complex(rep.c)
    for a in rep.zeros:
        v *= 1.0 - z2 / (a * a)
    return ComplexValue(v.real, v.imag, 0.0)


def comparison_grid(test_radius: float, grid: int) -> list[ComplexPoint]:
    """Origin plus a polar grid of the quarter disc (evenness and conjugate
    symmetry of the transforms cover the rest)."""
    pts = [ComplexPoint(0.0, 0.0)]
    for i in range(1, grid + 1):
        r = test_radius * i / grid
        for j in range(grid + 1):
            theta = 0.5 * math.pi * j / grid
            pts.append(ComplexPoint.from_complex(r * np.exp(1j * theta)))
    return pts


def compare_product(F, rep: ProductRep, test_radius: float | None = None,
                    grid: int = 8, with_table: bool = False):
    """max |F(z) - P(z)| / (|F(z)| + |F(0)|) over the disc |z| <= test_radius."""
    if test_radius is None:
        test_radius = rep.truncation_R / 3.0
    pts = comparison_grid(test_radius, grid)
    f0 = abs(F(ComplexPoint(0.0, 0.0)))
    rows = []
    for p, fv in zip(pts, ordered_map(F, pts)):
        pv = eval_product(rep, p)
        dev = abs(fv.value - pv.value) / (abs(fv) + f0)
        rows.append((p.w, -p.sigma, fv.re, fv.im, pv.re, pv.im, dev))
    worst = max(r[-1] for r in rows)
    return (worst, rows) if with_table else worst


def truncation_tail(radius: float, omitted_zeros) -> float:
    """sum (radius / alpha)^2 over zeros left out of a product.

    For |z| <= radius the omitted factors multiply the product by
    exp(-z^2 sum 1/alpha^2) to leading order, so this sum sizes the
    reconstruction error a truncated product can achieve.
    """
    return float(sum((radius / a) ** 2 for a in omitted_zeros))


def divide_products(h_rep: ProductRep, f4_rep: ProductRep, match_tol: float = 1e-8) -> ProductRep:
    """Remove the divisor's zeros from the dividend's (multiset difference)."""
    remaining = list(h_rep.zeros)
    notes = []
    for b in f4_rep.zeros:
        if not remaining:
            raise UnmatchedDivisorZero(f"divisor zero {b:.12g} has no partner")
        dists = np.abs(np.array(remaining) - b)
        i = int(np.argmin(dists))
        if dists[i] > match_tol:
            raise UnmatchedDivisorZero(
                f"divisor zero {b:.12g}: nearest dividend zero {remaining[i]:.12g} "
                f"is {dists[i]:.3g} away (> {match_tol:.3g})")
        if np.count_nonzero(dists <= match_tol) > 1:
            notes.append(f"ambiguous match for divisor zero {b:.12g}: "
                         f"{np.count_nonzero(dists <= match_tol)} candidates")
        remaining.pop(i)
    R = min(h_rep.truncation_R, f4_rep.truncation_R)
    return ProductRep(h_rep.c / f4_rep.c, tuple(z for z in remaining if z <= R), R, tuple(notes))


def zero_sets_match(a, b, tol: float) -> bool:
    """Multiset equality of two sorted zero lists within ``tol``."""
    if len(a) != len(b):
        return False
    return all(abs(x - y) <= tol for x, y in zip(sorted(a), sorted(b)))
