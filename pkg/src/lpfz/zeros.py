"""Real zeros, argument-principle counts, and their cross-certification.

Two independent counts are compared for a transform F:

* sign changes of F on [0, R], refined by bisection with certified signs;
* the winding number of F around the rectangle [-R, R] x [-Y, Y].

F is even with real values on the real axis, so real zeros come in +/- pairs
and the winding number must equal twice the positive real count when every
zero inside the rectangle is real.  A mismatch is reported, not raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernel as kn
from .errors import (
    InconclusiveSample,
    InvalidBracket,
    LostBracket,
    NonFinite,
    PhaseJumpTooLarge,
    ZeroOnContour,
)
from .kernel import KernelSpec
from .parallel import ordered_map
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings
from .transform import ComplexPoint, ExtendedKernel, real_axis, transform_for

MAX_SAMPLES_PER_SIDE = 4096


@dataclass(frozen=True)
class Rectangle:
    """Closed rectangle Re z in [re_min, re_max], Im z in [im_min, im_max]."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    @classmethod
    def centered(cls, R: float, Y: float) -> "Rectangle":
        return cls(-R, R, -Y, Y)

    def boundary(self, samples_per_side: int) -> list[complex]:
        """Counterclockwise samples, each corner once, closing point omitted."""
        s = np.linspace(0.0, 1.0, samples_per_side + 1)[:-1]
        bottom = self.re_min + (self.re_max - self.re_min) * s + 1j * self.im_min
        right = self.re_max + 1j * (self.im_min + (self.im_max - self.im_min) * s)
        top = self.re_max - (self.re_max - self.re_min) * s + 1j * self.im_max
        left = self.re_min + 1j * (self.im_max - (self.im_max - self.im_min) * s)
        return list(np.concatenate([bottom, right, top, left]))


@dataclass(frozen=True)
class ContourTrace:
    count: int
    raw_turns: float
    min_modulus: float
    max_jump: float
    samples_per_side: int


@dataclass
class ZeroReport:
    R: float
    Y: float
    real_zeros: tuple[float, ...]
    winding_count: int
    certified: bool
    tol: float
    zero_tols: tuple[float, ...] = ()
    origin_zero: bool = False
    step: float = 0.0
    samples_per_side: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def interval(self) -> tuple[float, float]:
        return (0.0, self.R)

    @property
    def rectangle(self) -> Rectangle:
        return Rectangle.centered(self.R, self.Y)

    def expected_winding(self) -> int:
        return 2 * len(self.real_zeros) + (1 if self.origin_zero else 0)

    def to_dict(self) -> dict:
        return {
            "interval": [0.0, self.R],
            "real_zeros": list(self.real_zeros),
            "zero_tols": list(self.zero_tols),
            "rectangle": [[-self.R, self.R], [-self.Y, self.Y]],
            "winding_count": self.winding_count,
            "certified": self.certified,
            "origin_zero": self.origin_zero,
            "tol": self.tol,
            "scan_step": self.step,
            "samples_per_side": self.samples_per_side,
            "notes": list(self.notes),
        }


def _certain(value: float, err: float) -> bool:
    return abs(value) > err


def scan_real_zeros(f, R: float, step: float) -> list[tuple[float, float]]:
    """Brackets [a, b] with certified f(a) f(b) < 0 on a grid of [0, R].

    ``f`` maps w to ``(value, error_estimate)``.
    """
    if not (R > 0 and step > 0):
        raise ValueError("R and step must be positive")
    count = max(1, int(math.ceil(R / step)))
    grid = np.linspace(0.0, R, count + 1)
    samples = ordered_map(f, grid)
    for x, (v, e) in zip(grid, samples):
        if not _certain(v, e):
            raise InconclusiveSample(f"|f({x:.6g})| = {abs(v):.3g} <= error {e:.3g}")
    brackets = []
    for i in range(count):
        if samples[i][0] * samples[i + 1][0] < 0:
            brackets.append((float(grid[i]), float(grid[i + 1])))
    return brackets


def refine_zero(f, bracket: tuple[float, float], tol: float = 1e-10) -> float:
    """Bisection on a certified sign change; the zero is returned within +/- tol."""
    zero, halfwidth = refine_zero_bounded(f, bracket, tol)
    if halfwidth > tol:
        raise LostBracket(f"noise limits the zero near {zero:.12g} to +/- {halfwidth:.3g} > tol")
    return zero


def refine_zero_bounded(f, bracket: tuple[float, float], tol: float = 1e-10) -> tuple[float, float]:
    """Like ``refine_zero`` but returns ``(zero, halfwidth)``.

    When a midpoint falls inside the quadrature noise band the certified
    bracket is widened symmetrically (tol, 2 tol, 4 tol, ...) until both ends
    carry certified opposite signs; the attained half-width is returned.
    """
    a, b = float(bracket[0]), float(bracket[1])
    if not a < b:
        raise InvalidBracket(f"degenerate bracket [{a}, {b}]")
    fa, ea = f(a)
    fb, eb = f(b)
    if not (_certain(fa, ea) and _certain(fb, eb)) or fa * fb >= 0:
        raise LostBracket(f"[{a}, {b}] is not a certified sign change")
    while b - a > 2.0 * tol:
        m = 0.5 * (a + b)
        fm, em = f(m)
        if _certain(fm, em):
            if fm * fa < 0:
                b = m
            else:
                a, fa = m, fm
            continue
        d = tol
        while m - d > a or m + d < b:
            lo, hi = max(a, m - d), min(b, m + d)
            flo, elo = f(lo)
            fhi, ehi = f(hi)
            if _certain(flo, elo) and _certain(fhi, ehi):
                if flo * fhi < 0:
                    return 0.5 * (lo + hi), 0.5 * (hi - lo)
                raise LostBracket(f"certified signs agree around {m:.12g}; noise flipped a sign")
            d *= 2.0
        return 0.5 * (a + b), 0.5 * (b - a)
    return 0.5 * (a + b), 0.5 * (b - a)


def contour_trace(F, rect: Rectangle, samples_per_side: int) -> ContourTrace:
    pts = rect.boundary(samples_per_side)
    vals = ordered_map(lambda z: F(ComplexPoint.from_complex(z)), pts)
    mods = np.array([abs(v) for v in vals])
    errs = np.array([v.error_estimate for v in vals])
    bad = np.flatnonzero(mods <= 3.0 * errs)
    if bad.size:
        z = pts[bad[0]]
        raise ZeroOnContour(f"|F| = {mods[bad[0]]:.3g} within 3x error at z = {z:.6g}")
    phase = np.angle(np.array([v.value for v in vals]))
    steps = np.diff(np.concatenate([phase, phase[:1]]))
    steps = (steps + math.pi) % (2.0 * math.pi) - math.pi
    max_jump = float(np.max(np.abs(steps)))
    if max_jump >= math.pi / 2:
        raise PhaseJumpTooLarge(
            f"phase jump {max_jump:.3f} >= pi/2 with {samples_per_side} samples per side")
    turns = math.fsum(steps) / (2.0 * math.pi)
    return ContourTrace(int(round(turns)), turns, float(mods.min()), max_jump, samples_per_side)


def winding_count(F, rect: Rectangle, samples_per_side: int = 256) -> int:
    """Number of zeros of F inside ``rect`` via the argument principle."""
    return contour_trace(F, rect, samples_per_side).count


def adaptive_winding(F, rect: Rectangle, start: int = 64,
                     limit: int = MAX_SAMPLES_PER_SIDE) -> ContourTrace:
    """Double the samples per side until no phase jump reaches pi/2."""
    n = start
    while True:
        try:
            return contour_trace(F, rect, n)
        except PhaseJumpTooLarge:
            if 2 * n > limit:
                raise
            n *= 2


def default_step(obj) -> float:
    """Half the zero-gap scale pi / L, L the width where exp(-q) reaches e^-36."""
    specs = obj.components if isinstance(obj, ExtendedKernel) else (obj,)
    width = max(kn.support_scale(s) for s in specs)
    return 0.5 * math.pi / width


def certify(F, R: float, Y: float = 1.0, step: float = 0.25, tol: float = 1e-10,
            samples_per_side: int | None = None, max_refinements: int = 5) -> ZeroReport:
    """Scan, refine and wind for an arbitrary even transform F."""
    f = real_axis(F)
    notes: list[str] = []
    v0, e0 = f(0.0)
    origin = not _certain(v0, e0)

    if samples_per_side is None:
        trace = adaptive_winding(F, Rectangle.centered(R, Y))
    else:
        trace = contour_trace(F, Rectangle.centered(R, Y), samples_per_side)

    zeros: list[float] = []
    tols: list[float] = []
    for level in range(max_refinements + 1):
        zeros, tols = _scan_and_refine(f, R, step, tol, origin, notes)
        expected = 2 * len(zeros) + (1 if origin else 0)
        if trace.count <= expected:
            break
        notes.append(f"winding {trace.count} > real count {expected} at step {step:g}; halving")
        step /= 2.0
    expected = 2 * len(zeros) + (1 if origin else 0)
    certified = trace.count == expected
    if not certified:
        notes.append(
            f"count mismatch: winding {trace.count} vs 2 x {len(zeros)} real zeros"
            " (non-real zeros inside, or a multiple zero)")
    return ZeroReport(R, Y, tuple(zeros), trace.count, certified, tol, tuple(tols),
                      origin, step, trace.samples_per_side, notes)


def _scan_and_refine(f, R, step, tol, origin, notes):
    for attempt in range(4):
        try:
            if origin:
                brackets = [(a, b) for a, b in scan_real_zeros(_shifted(f, step / 2), R - step / 2, step)]
                brackets = [(a + step / 2, b + step / 2) for a, b in brackets]
            else:
                brackets = scan_real_zeros(f, R, step)
            break
        except InconclusiveSample as exc:
            notes.append(f"{exc}; rescanning with a perturbed grid")
            step *= 0.93
    else:
        raise InconclusiveSample("sign could not be certified on four different grids")
    found = sorted(refine_zero_bounded(f, br, tol) for br in brackets)
    for z, h in found:
        if h > 1.5 * tol:
            notes.append(f"zero {z:.12g} resolved to +/- {h:.2g} (quadrature noise floor)")
    return [z for z, _ in found], [max(h, tol) for _, h in found]


def _shifted(f, d):
    return lambda x: f(x + d)


def certify_real_zeros(obj, R: float, Y: float = 1.0,
                       settings: QuadratureSettings = DEFAULT_SETTINGS, *,
                       n: int | None = None, step: float | None = None,
                       tol: float = 1e-10, samples_per_side: int | None = None) -> ZeroReport:
    """Certify that every zero of the transform in [-R, R] x [-Y, Y] is real.

    ``obj`` is a KernelSpec, an ExtendedKernel, or an already-built transform
    (then ``step`` is required).  ``n`` selects the approximant transform G_n.
    """
    if isinstance(obj, (KernelSpec, ExtendedKernel)):
        F = transform_for(obj, n, settings)
        if step is None:
            step = default_step(obj)
    else:
        F = obj
        if step is None:
            raise ValueError("step is required when certifying a bare transform")
    return certify(F, R, Y, step, tol, samples_per_side)


def estimate_order(F, radii, n_angles: int = 64) -> float:
    """Slope of log log max_{|z|=r} |F| against log r (a finite-scale diagnostic)."""
    radii = np.asarray(radii, dtype=float)
    if radii.size < 3 or np.any(np.diff(radii) <= 0):
        raise ValueError("need at least three increasing radii")
    maxima = []
    for r in radii:
        pts = [ComplexPoint.from_complex(r * np.exp(2j * math.pi * k / n_angles))
               for k in range(n_angles)]
        m = max(abs(v) for v in ordered_map(F, pts))
        if m == 0 or not math.isfinite(m):
            raise NonFinite(f"max |F| on |z| = {r:g} is {m}")
        if m <= 1.0:
            raise NonFinite(f"max |F| on |z| = {r:g} is {m:.3g} <= 1; log log undefined")
        maxima.append(m)
    y = np.log(np.log(np.array(maxima)))
    slope = np.polyfit(np.log(radii), y, 1)[0]
    return float(slope)


def zeros_csv_rows(report: ZeroReport) -> list[tuple[int, float, float]]:
    tols = report.zero_tols or (report.tol,) * len(report.real_zeros)
    return [(i + 1, z, t) for i, (z, t) in enumerate(zip(report.real_zeros, tols))]
