import json
import math
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lpfz.kernel import KernelSpec

settings.register_profile("lpfz", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lpfz")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "oracles.json").read_text())


@pytest.fixture(scope="session")
def quartic():
    return KernelSpec.parametric(m=2)


def bessel_k0(x, terms=60):
    """K_0 from its ascending series (fine for moderate x)."""
    gamma_e = 0.5772156649015329
    y = x * x / 4
    total, term, harmonic = 0.0, 1.0, 0.0
    i0 = 0.0
    for k in range(terms):
        if k:
            term *= y / (k * k)
            harmonic += 1.0 / k
        i0 += term
        total += term * harmonic
    return -(math.log(x / 2) + gamma_e) * i0 + total
