"""Freeze independent reference values into tests/data/oracles.json.

Everything here comes from closed forms evaluated with mpmath at 50 digits,
never from the library itself:

* F_{2k}(z) = (1/k) sum_j (-1)^j Gamma((2j+1)/(2k)) z^(2j) / (2j)!, from
  termwise integration of the cosine series;
* K_0 from mpmath's Bessel routine;
* G_1(0) for q = t^4 from the beta integral.

Run:  python scripts/compute_oracles.py
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50
OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "oracles.json"


def f2k_series(k, z, terms=400):
    z = mp.mpc(z)
    s = mp.mpf(0)
    for j in range(terms):
        s += (-1) ** j * mp.gamma(mp.mpf(2 * j + 1) / (2 * k)) * z ** (2 * j) / mp.factorial(2 * j)
    return s / k


def real_zeros(k, upto, step=0.05):
    f = lambda x: mp.re(f2k_series(k, x))
    found, x, fx = [], mp.mpf(step), f(step)
    while x < upto:
        y = x + step
        fy = f(y)
        if fx * fy < 0:
            found.append(mp.findroot(f, (x, y), solver="anderson"))
        x, fx = y, fy
    return found


def main():
    data = {
        "gamma_quarter_half": float(mp.gamma(mp.mpf(1) / 4) / 2),
        "two_gamma_7_6": float(2 * mp.gamma(mp.mpf(7) / 6)),
        "bessel_k0_1": float(mp.besselk(0, 1)),
        "g1_quartic_at_0": float(mp.mpf(32) / 45),
        "f4_zeros": [float(z) for z in real_zeros(2, 22)],
        "f6_zeros": [float(z) for z in real_zeros(3, 24)],
        "f4_values": [],
    }
    for z in [0.5, 2 - 0.5j, 3 + 1j, 1.5j, 6 - 0.8j]:
        v = f2k_series(2, z)
        data["f4_values"].append([z.real if isinstance(z, complex) else z,
                                  z.imag if isinstance(z, complex) else 0.0,
                                  float(mp.re(v)), float(mp.im(v))])
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
