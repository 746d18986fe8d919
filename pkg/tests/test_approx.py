import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpfz import approx
from lpfz import kernel as kn
from lpfz.errors import NTooSmall
from lpfz.kernel import KernelSpec

T4 = KernelSpec.parametric()
specs = st.sampled_from([
    T4, KernelSpec.parametric(mu=1), KernelSpec.parametric(m=3),
    KernelSpec.parametric(betas=[2.0]), KernelSpec.cosh(0.5), KernelSpec.cosh(2),
])


def test_params():
    p = approx.ApproximantParams.for_kernel(T4, 16)
    assert p.lam == pytest.approx(2.0)
    with pytest.raises(ValueError):
        approx.ApproximantParams.for_kernel(T4, 0)


def test_g_n_examples():
    p3 = approx.ApproximantParams.for_kernel(T4, 3)
    assert approx.g_n_eval(T4, p3, 0.0) == pytest.approx(0.75)
    p16 = approx.ApproximantParams.for_kernel(T4, 16)
    assert approx.g_n_eval(T4, p16, 2.0) == pytest.approx(0.0, abs=1e-12)
    assert approx.g_n_eval(T4, p16, 3.0) == 0.0


def test_envelope_examples():
    p4 = approx.ApproximantParams.for_kernel(T4, 4)
    assert approx.g_n_eval(T4, p4, 1.0) == pytest.approx(0.8 * 0.75**5, rel=1e-12)
    assert approx.envelope_check(T4, p4, 1.0)
    assert approx.envelope_check(T4, p4, 5.0)
    assert approx.envelope_check(T4, p4, 0.0)


@given(specs, st.integers(1, 5000), st.floats(-10, 10))
def test_envelope_property(spec, n, t):
    p = approx.ApproximantParams.for_kernel(spec, n)
    assert approx.envelope_check(spec, p, t)


@given(specs, st.integers(1, 500))
def test_difference_nonincreasing(spec, n):
    p = approx.ApproximantParams.for_kernel(spec, n)
    t = np.linspace(0, p.lam, 400)
    d = approx.difference(spec, p, t)
    assert np.all(d >= -1e-15)
    assert np.all(np.diff(d) <= 1e-12)


@given(specs, st.integers(1, 100), st.floats(0, 10))
def test_g_n_even(spec, n, t):
    p = approx.ApproximantParams.for_kernel(spec, n)
    assert approx.g_n_eval(spec, p, t) == approx.g_n_eval(spec, p, -t)


def test_kn_bound_examples():
    b3 = approx.kn_bound(T4, 1.0, 3.0)
    assert 0 < b3 < 1e-30
    # majorant exp(-78 - (t - 3)) on [3, inf)
    assert b3 <= 2 * math.exp(-78)
    b1 = approx.kn_bound(T4, 1.0, 1.0)
    assert math.isfinite(b1) and b1 > 0
    vals = [approx.kn_bound(T4, 1.0, t1) for t1 in (0.5, 1.0, 1.5, 2.0)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_kn_bound_against_direct_quadrature():
    from lpfz.quadrature import integrate
    v, _ = integrate(lambda t: np.exp(-t**4 + t), 1.0, 6.0)
    assert approx.kn_bound(T4, 1.0, 1.0) == pytest.approx(2 * v, rel=1e-9)


def test_jn_bound_examples():
    assert approx.jn_bound(1, 1, 100) == pytest.approx(2 * math.e / 100)
    assert approx.jn_bound(1, 1, 200) == pytest.approx(approx.jn_bound(1, 1, 100) / 2)
    assert approx.jn_bound(2, 0.5, 10) == pytest.approx(0.2718282, rel=1e-6)
    with pytest.raises(NTooSmall):
        approx.jn_bound(1, 3, 50, T4)


def test_n_for_epsilon_examples():
    b = approx.n_for_epsilon(T4, 1.0, 1e-3)
    assert approx.jn_bound(1.0, b.t1, b.n_min) < 5e-4
    assert approx.kn_bound(T4, 1.0, b.t1) < 5e-4
    assert b.holds()
    assert b.t1 == 2.0 and b.n_min == 29558
    looser = approx.n_for_epsilon(T4, 1.0, 1e-2)
    assert looser.n_min <= b.n_min
    wider = approx.n_for_epsilon(T4, 2.0, 1e-3)
    assert wider.n_min >= b.n_min


def test_disc_grid():
    assert len(approx.disc_grid(1.0, 5)) == 25
    assert max(abs(p.z) for p in approx.disc_grid(1.0, 5)) == pytest.approx(1.0)
    assert [p.z for p in approx.disc_grid(0.0, 5)] == [0j]


def test_empirical_gap_examples():
    t1 = 2.0
    gap = approx.empirical_gap(T4, 200, 1.0)
    assert gap < approx.jn_bound(1.0, t1, 200) + approx.kn_bound(T4, 1.0, t1)
    gaps = [approx.empirical_gap(T4, n, 1.0, with_error=True) for n in (10, 20, 40, 80)]
    for (g0, e0), (g1, e1) in zip(gaps, gaps[1:]):
        assert g1 <= g0 + 2 * (e0 + e1)
    assert approx.empirical_gap(T4, 10, 0.0) >= 0


@pytest.mark.parametrize("M, eps", [(1.0, 1e-2), (1.0, 1e-3), (2.0, 1e-2)])
def test_uniform_convergence(M, eps):
    b = approx.n_for_epsilon(T4, M, eps)
    assert approx.empirical_gap(T4, b.n_min, M) < eps
