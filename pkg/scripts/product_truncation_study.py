"""How well a truncated zero product reproduces F_4, by window and test radius.

For every window R the product keeps the zeros below R and is compared on
discs of radius R/3 and alpha_1/2.  The omitted-zero estimate
exp(r^2 sum alpha^-2) - 1 over the known omitted zeros (up to 26) is
printed alongside; it underestimates, since zeros past 26 are left out.

    python scripts/product_truncation_study.py --out runs/product
"""

import argparse
import csv
import math
from pathlib import Path

from lpfz import factorization as fz
from lpfz import zeros as zs
from lpfz.kernel import KernelSpec
from lpfz.transform import real_axis, transform_for


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--windows", default="8,11,13.5,15.5,18,20.2")
    ap.add_argument("--out", default="runs/product")
    args = ap.parse_args()
    spec = KernelSpec.parametric()
    F = transform_for(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    windows = [float(x) for x in args.windows.split(",")]
    # zeros past the largest window, from the real axis alone
    f = real_axis(F)
    full = [zs.refine_zero_bounded(f, br)[0] for br in zs.scan_real_zeros(f, 26.0, 0.25)]
    rows = []
    for R in windows:
        rep = fz.build_product(F, zs.certify_real_zeros(spec, R))
        omitted = full[len(rep.zeros):]
        for r in (R / 3, full[0] / 2):
            dev = fz.compare_product(F, rep, test_radius=r)
            est = math.expm1(fz.truncation_tail(r, omitted))
            rows.append((R, len(rep.zeros), r, dev, est))
            print(f"R = {R:5.1f}  pairs = {len(rep.zeros):2d}  radius = {r:6.3f}  "
                  f"deviation = {dev:.3e}  omitted-zero estimate = {est:.3e}")
    with (out / "product_deviation.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["R", "pairs", "radius", "deviation", "omitted_estimate"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
