"""Certify real zeros for a corpus of kernels and write one JSON summary.

    python scripts/certify_corpus.py --out runs/corpus
"""

import argparse
import json
import time
from pathlib import Path

from lpfz import zeros as zs
from lpfz.kernel import KernelSpec
from lpfz.transform import ExtendedKernel

CORPUS = {
    "t^4": (KernelSpec.parametric(), 11.0),
    "t^4 exp(t^2)": (KernelSpec.parametric(mu=1), 13.0),
    "t^6": (KernelSpec.parametric(m=3), 11.0),
    "t^4 (1 + t^2/4)": (KernelSpec.parametric(betas=[2.0]), 11.4),
    "cosh a=0.5": (KernelSpec.cosh(0.5), 5.0),
    "cosh a=1": (KernelSpec.cosh(1), 6.5),
    "cosh a=2": (KernelSpec.cosh(2), 8.7),
    "t^4 * t^6": (ExtendedKernel.of(KernelSpec.parametric(), KernelSpec.parametric(m=3)), 11.0),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/corpus")
    ap.add_argument("--Y", type=float, default=1.0)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    summary = {}
    for label, (obj, R) in CORPUS.items():
        t0 = time.perf_counter()
        rep = zs.certify_real_zeros(obj, R, args.Y)
        dt = time.perf_counter() - t0
        summary[label] = rep.to_dict()
        print(f"{label:18s} R={R:5.1f}  zeros={len(rep.real_zeros):2d}  winding={rep.winding_count:2d}  "
              f"certified={rep.certified}  ({dt:.1f}s)")
    (out / "corpus.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
