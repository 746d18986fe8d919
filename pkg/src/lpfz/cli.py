"""Command-line front end: ``lpfz <command> --kernel FILE [options]``.

Kernel files are flat ``key = value`` text::

    # t^4 * (1 + t^2/4)
    form = parametric
    k = 1
    m = 2
    mu = 0
    betas = 2

``form`` is ``parametric`` (keys k, m, mu, betas) or ``cosh`` (key a).
``betas`` is a comma-separated list and may be empty.  Blank lines and
text after ``#`` are ignored; keys may appear once; omitted keys take the
defaults of KernelSpec.

Exit status: 0 success, 2 a numerical finding against the expected
property (report still written), 1 usage or operational error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import approx, factorization, positivity, zeros
from .errors import LPFZError
from .kernel import Form, KernelSpec
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings
from .transform import (
    ComplexPoint, ExtendedKernel, convolve_kernels, real_axis, transform_for,
)

COMMANDS = ("zeros", "verify", "converge", "product", "monotone", "coeffs", "convolve", "order")
EXIT_OK, EXIT_ERROR, EXIT_FINDING = 0, 1, 2


class UsageError(Exception):
    pass


# ---- kernel files ---------------------------------------------------------

_PARAMETRIC_KEYS = {"form", "k", "m", "mu", "betas"}
_COSH_KEYS = {"form", "a"}


def parse_kernel_text(text: str) -> KernelSpec:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in _PARAMETRIC_KEYS | _COSH_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value
    form = fields.get("form", Form.PARAMETRIC.value).lower()
    if form == Form.COSH.value:
        extra = set(fields) - _COSH_KEYS
        if extra:
            raise ValueError(f"keys {sorted(extra)} do not apply to form = cosh")
        return KernelSpec.cosh(a=float(fields.get("a", 1.0)))
    if form != Form.PARAMETRIC.value:
        raise ValueError(f"unknown form {form!r}")
    extra = set(fields) - _PARAMETRIC_KEYS
    if extra:
        raise ValueError(f"keys {sorted(extra)} do not apply to form = parametric")
    m_text = fields.get("m", "2")
    if float(m_text) != int(float(m_text)):
        raise ValueError(f"m must be an integer, got {m_text}")
    betas = [float(b) for b in fields.get("betas", "").split(",") if b.strip()]
    return KernelSpec.parametric(k=float(fields.get("k", 1.0)), m=int(float(m_text)),
                                 mu=float(fields.get("mu", 0.0)), betas=betas)


def load_kernel(path) -> KernelSpec:
    return parse_kernel_text(Path(path).read_text())


# ---- configuration --------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    command: str
    kernel_paths: tuple[str, ...] = ()
    output_dir: str = "."
    R: float | None = None
    Y: float = 1.0
    n: int | None = None
    M: float | None = None
    epsilon: float | None = None
    step: float | None = None
    tol: float = 1e-10
    w: tuple[float, ...] = ()
    max_m: int = 6
    sigma_max: float = 1.0
    sigma_step: float = 0.05
    radii: tuple[float, ...] = (4.0, 8.0, 16.0)
    grid: int = 5
    control: bool = False
    max_deviation: float | None = None
    settings: QuadratureSettings = field(default_factory=lambda: DEFAULT_SETTINGS)

    @property
    def kernel_path(self) -> str | None:
        return self.kernel_paths[0] if self.kernel_paths else None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kernel_paths"] = list(self.kernel_paths)
        d["w"] = list(self.w)
        d["radii"] = list(self.radii)
        return d


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text):
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return v


def _float_list(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lpfz", description="Zeros, bounds and growth checks for Fourier transforms of exp(-q).")
    p.add_argument("--version", action="version", version=f"lpfz {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--kernel", action="append", default=[], metavar="FILE",
                   help="kernel file (repeat for convolve)")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--R", type=_positive, help="half-width of the real window")
    p.add_argument("--Y", type=_positive, default=1.0, help="half-height of the rectangle")
    p.add_argument("--n", type=int, help="use the approximant transform G_n")
    p.add_argument("--M", type=_positive, help="disc radius for converge")
    p.add_argument("--epsilon", type=_positive)
    p.add_argument("--step", type=_positive, help="real-axis scan step")
    p.add_argument("--tol", type=_positive, default=1e-10, help="zero bracket half-width")
    p.add_argument("--w", type=_float_list, default=(), help="comma-separated w values")
    p.add_argument("--max-m", type=int, default=6)
    p.add_argument("--sigma-max", type=_positive, default=1.0)
    p.add_argument("--sigma-step", type=_positive, default=0.05)
    p.add_argument("--radii", type=_float_list, default=(4.0, 8.0, 16.0))
    p.add_argument("--grid", type=int, default=5, help="polar grid size")
    p.add_argument("--control", action="store_true",
                   help="monotone: run the built-in z^2 + 1 negative control")
    p.add_argument("--max-deviation", type=_positive,
                   help="product: flag deviations above this as a finding")
    p.add_argument("--rel-tol", type=_positive, default=DEFAULT_SETTINGS.rel_tol)
    p.add_argument("--abs-tol", type=_positive, default=DEFAULT_SETTINGS.abs_tol)
    p.add_argument("--max-subdivisions", type=int, default=DEFAULT_SETTINGS.max_subdivisions)
    return p


def parse_args(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    cmd = a.command
    needs_kernel = not (cmd == "monotone" and a.control)
    if needs_kernel and not a.kernel:
        raise UsageError(f"{cmd}: --kernel is required")
    if cmd != "convolve" and len(a.kernel) > 1:
        raise UsageError(f"{cmd}: takes a single --kernel")
    if cmd == "convolve" and len(a.kernel) < 2:
        raise UsageError("convolve: give --kernel at least twice")
    if cmd in ("zeros", "verify", "product", "convolve") and a.R is None:
        raise UsageError(f"{cmd}: --R is required")
    if cmd == "converge" and (a.M is None or a.epsilon is None):
        raise UsageError("converge: --M and --epsilon are required")
    if cmd == "coeffs" and not a.w:
        raise UsageError("coeffs: --w is required")
    if a.n is not None and a.n < 1:
        raise UsageError("--n must be a positive integer")
    if a.max_m < 0 or a.grid < 1 or a.max_subdivisions < 1:
        raise UsageError("--max-m, --grid and --max-subdivisions must be positive")
    if len(a.radii) < 3:
        raise UsageError("--radii needs at least three values")
    settings = QuadratureSettings(a.rel_tol, a.abs_tol, a.max_subdivisions)
    w = a.w or ((0.0, 0.5, 1.0, 2.0) if cmd == "monotone" else ())
    return RunConfig(cmd, tuple(a.kernel), a.out, a.R, a.Y, a.n, a.M, a.epsilon, a.step,
                     a.tol, tuple(w), a.max_m, a.sigma_max, a.sigma_step, tuple(a.radii),
                     a.grid, a.control, a.max_deviation, settings)


# ---- output ---------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _clean(obj):
    """JSON-ready copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n")


def write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(header)
        for r in rows:
            out.writerow([_fmt(x) for x in r])


def _grid(lo, hi, step):
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + i * step for i in range(count + 1)]


# ---- commands -------------------------------------------------------------

def _kernel(cfg: RunConfig) -> KernelSpec:
    return load_kernel(cfg.kernel_path)


def _modulus_series(F, R, points=201):
    f = real_axis(F)
    ws = np.linspace(0.0, R, points)
    return [(float(w), abs(f(float(w))[0])) for w in ws]


def cmd_zeros(cfg, out):
    spec = _kernel(cfg)
    report = zeros.certify_real_zeros(spec, cfg.R, cfg.Y, cfg.settings, n=cfg.n,
                                      step=cfg.step, tol=cfg.tol)
    write_csv(out / "zeros.csv", ("index", "zero", "tol"), zeros.zeros_csv_rows(report))
    F = transform_for(spec, cfg.n, cfg.settings)
    write_csv(out / "series_modulus.csv", ("w", "abs_F"), _modulus_series(F, cfg.R))
    result = {"kernel": spec.to_dict(), "zeros": report.to_dict()}
    return result, report.certified


def cmd_verify(cfg, out):
    """Certification plus an independent recount of the winding at twice the resolution."""
    spec = _kernel(cfg)
    report = zeros.certify_real_zeros(spec, cfg.R, cfg.Y, cfg.settings, n=cfg.n,
                                      step=cfg.step, tol=cfg.tol)
    F = transform_for(spec, cfg.n, cfg.settings)
    recount = zeros.winding_count(F, report.rectangle, 2 * report.samples_per_side)
    write_csv(out / "zeros.csv", ("index", "zero", "tol"), zeros.zeros_csv_rows(report))
    consistent = report.certified and recount == report.winding_count
    result = {"kernel": spec.to_dict(), "zeros": report.to_dict(),
              "recount": {"samples_per_side": 2 * report.samples_per_side,
                          "winding_count": recount},
              "consistent": consistent, "certified": report.certified}
    return result, consistent


def cmd_converge(cfg, out):
    spec = _kernel(cfg)
    bound = approx.n_for_epsilon(spec, cfg.M, cfg.epsilon, cfg.settings)
    rows = []
    for mult in (1, 2, 4):
        n = mult * bound.n_min
        gap, err = approx.empirical_gap(spec, n, cfg.M, cfg.grid, cfg.settings, with_error=True)
        rows.append((n, gap, err))
    write_csv(out / "series_gap.csv", ("n", "gap", "error_band"), rows)
    below = rows[0][1] < cfg.epsilon
    nonincreasing = all(b[1] <= a[1] + 2 * (a[2] + b[2]) for a, b in zip(rows, rows[1:]))
    result = {"kernel": spec.to_dict(), "bound": asdict(bound), "bound_holds": bound.holds(),
              "gaps": [{"n": n, "gap": g, "error_band": e} for n, g, e in rows],
              "gap_below_epsilon": below, "gap_nonincreasing": nonincreasing}
    return result, below and nonincreasing and bound.holds()


def cmd_product(cfg, out):
    spec = _kernel(cfg)
    F = transform_for(spec, cfg.n, cfg.settings)
    report = zeros.certify_real_zeros(spec, cfg.R, cfg.Y, cfg.settings, n=cfg.n,
                                      step=cfg.step, tol=cfg.tol)
    if not report.certified:
        return {"kernel": spec.to_dict(), "zeros": report.to_dict(), "product": None}, False
    rep = factorization.build_product(F, report)
    dev, table = factorization.compare_product(F, rep, grid=cfg.grid, with_table=True)
    write_csv(out / "product.csv", ("w", "y", "F_re", "F_im", "P_re", "P_im", "deviation"), table)
    write_csv(out / "zeros.csv", ("index", "zero", "tol"), zeros.zeros_csv_rows(report))
    ok = cfg.max_deviation is None or dev <= cfg.max_deviation
    result = {"kernel": spec.to_dict(), "zeros": report.to_dict(), "product": rep.to_dict(),
              "test_radius": rep.truncation_R / 3.0, "max_deviation": dev}
    return result, ok


def cmd_monotone(cfg, out):
    if cfg.control:
        F, label = positivity.negative_control, "z^2 + 1"
    else:
        spec = _kernel(cfg)
        F, label = transform_for(spec, cfg.n, cfg.settings), spec.label()
    sigmas = _grid(0.0, cfg.sigma_max, cfg.sigma_step)
    rep = positivity.monotonicity_scan(F, cfg.w, sigmas)
    write_csv(out / "monotone.csv", ("w", "sigma", "value", "error_band"), rep.rows)
    result = {"function": label, "monotonicity": rep.to_dict(), "ok": rep.ok}
    return result, rep.ok


def cmd_coeffs(cfg, out):
    spec = _kernel(cfg)
    F = transform_for(spec, cfg.n, cfg.settings)
    rows, negatives = [], []
    for w in cfg.w:
        table = positivity.b_table(F, w, cfg.max_m, n_or_N=cfg.n)
        rows.extend(table.rows())
        negatives.extend({"w": w, "m": m} for m in table.conclusively_negative())
    write_csv(out / "coeffs.csv", ("w", "m", "value", "error_band", "conclusive"), rows)
    result = {"kernel": spec.to_dict(), "conclusively_negative": negatives}
    return result, not negatives


def cmd_convolve(cfg, out):
    specs = [load_kernel(p) for p in cfg.kernel_paths]
    ext = ExtendedKernel.of(*specs)
    report = zeros.certify_real_zeros(ext, cfg.R, cfg.Y, cfg.settings, step=cfg.step, tol=cfg.tol)
    parts = [zeros.certify_real_zeros(s, cfg.R, cfg.Y, cfg.settings, tol=cfg.tol) for s in specs]
    union = sorted(z for p in parts for z in p.real_zeros)
    match = factorization.zero_sets_match(report.real_zeros, union, 1e-8)
    write_csv(out / "zeros.csv", ("index", "zero", "tol"), zeros.zeros_csv_rows(report))
    if len(specs) == 2:
        ts = _grid(0.0, 3.0, 0.05)
        write_csv(out / "series_convolution.csv", ("t", "c"),
                  [(t, convolve_kernels(ext, t, cfg.settings)) for t in ts])
    ok = report.certified and all(p.certified for p in parts) and match
    result = {"kernels": [s.to_dict() for s in specs], "zeros": report.to_dict(),
              "component_zeros": [p.to_dict() for p in parts],
              "union_matches": match, "certified": report.certified}
    return result, ok


def cmd_order(cfg, out):
    spec = _kernel(cfg)
    F = transform_for(spec, cfg.n, cfg.settings)
    rho = zeros.estimate_order(F, cfg.radii)
    rows = []
    for r in cfg.radii:
        pts = [ComplexPoint.from_complex(r * np.exp(2j * math.pi * k / 64)) for k in range(64)]
        rows.append((r, max(abs(F(p)) for p in pts)))
    write_csv(out / "series_order.csv", ("r", "max_abs_F"), rows)
    return {"kernel": spec.to_dict(), "order_estimate": rho, "below_two": rho < 2}, rho < 2


HANDLERS = {
    "zeros": cmd_zeros, "verify": cmd_verify, "converge": cmd_converge,
    "product": cmd_product, "monotone": cmd_monotone, "coeffs": cmd_coeffs,
    "convolve": cmd_convolve, "order": cmd_order,
}


def run(cfg: RunConfig) -> int:
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        result, ok = HANDLERS[cfg.command](cfg, out)
        payload = {"version": __version__, "config": cfg.to_dict(), "command": cfg.command,
                   "result": result, "ok": bool(ok)}
        write_json(out / "report.json", payload)
    except (LPFZError, OSError, ValueError) as exc:
        print(f"lpfz {cfg.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if ok else EXIT_FINDING


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return EXIT_ERROR
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
