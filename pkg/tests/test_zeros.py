import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lpfz import zeros as zs
from lpfz.errors import InconclusiveSample, InvalidBracket, LostBracket, ZeroOnContour
from lpfz.kernel import KernelSpec
from lpfz.transform import ComplexPoint, ComplexValue, real_axis, transform_for

T4 = KernelSpec.parametric()
F4 = transform_for(T4)


def analytic(fn, err=1e-15):
    def F(p):
        v = complex(fn(p.z if isinstance(p, ComplexPoint) else complex(p)))
        return ComplexValue(v.real, v.imag, err)
    return F


def cosine(x):
    return math.cos(x), 1e-15


def test_scan_cosine():
    br = zs.scan_real_zeros(cosine, 10.0, 0.1)
    assert len(br) == 3
    for (a, b), k in zip(br, (1, 3, 5)):
        assert a < k * math.pi / 2 < b


def test_scan_before_first_zero_is_empty():
    assert zs.scan_real_zeros(real_axis(F4), 3.0, 0.25) == []


def test_scan_f4_finds_bracket(oracles):
    br = zs.scan_real_zeros(real_axis(F4), 4.0, 0.25)
    assert len(br) == 1 and br[0][0] < oracles["f4_zeros"][0] < br[0][1]


def test_scan_inconclusive():
    with pytest.raises(InconclusiveSample):
        zs.scan_real_zeros(lambda x: (x - 1.0, 1e-3), 2.0, 0.5)


def test_refine_examples(oracles):
    assert zs.refine_zero(cosine, (1.5, 1.6), 1e-10) == pytest.approx(math.pi / 2, abs=1e-10)
    with pytest.raises(InvalidBracket):
        zs.refine_zero(cosine, (1.5, 1.5))
    with pytest.raises(LostBracket):
        zs.refine_zero(cosine, (0.1, 0.2))
    f = real_axis(F4)
    first = [zs.refine_zero(f, zs.scan_real_zeros(f, 4.0, s)[0]) for s in (0.25, 0.1, 0.05)]
    for z in first:
        assert z == pytest.approx(oracles["f4_zeros"][0], abs=1e-8)


def test_refine_noise_widening():
    # a noise band of 1e-6 around a simple zero at 1
    f = lambda x: (x - 1.0, 1e-6)
    z, h = zs.refine_zero_bounded(f, (0.0, 3.0), 1e-10)
    assert abs(z - 1.0) <= h and 1e-6 <= h <= 4e-6
    with pytest.raises(LostBracket):
        zs.refine_zero(f, (0.0, 3.0), 1e-10)


def test_winding_examples(oracles):
    rect = zs.Rectangle.centered(2.0, 1.0)
    assert zs.winding_count(analytic(lambda z: z * z - 1), rect, 64) == 2
    assert zs.winding_count(analytic(lambda z: z * z + 4), rect, 64) == 0
    a1 = oracles["f4_zeros"][0]
    assert zs.winding_count(F4, zs.Rectangle.centered(a1 + 1.0, 1.0), 64) == 2


def test_zero_on_contour():
    with pytest.raises(ZeroOnContour):
        zs.winding_count(analytic(lambda z: z - 2.0), zs.Rectangle.centered(2.0, 1.0), 16)


def test_winding_stable_under_doubling():
    rect = zs.Rectangle.centered(11.0, 1.0)
    counts = [zs.winding_count(F4, rect, n) for n in (64, 128, 256)]
    assert counts == [6, 6, 6]


def test_rectangle_boundary_is_counterclockwise():
    pts = zs.Rectangle.centered(1.0, 1.0).boundary(8)
    area = 0.5 * sum((a.conjugate() * b).imag for a, b in zip(pts, pts[1:] + pts[:1]))
    assert area == pytest.approx(4.0)


@pytest.mark.parametrize("spec, R", [
    (T4, 11.0),
    (KernelSpec.parametric(mu=1), 13.0),
    (KernelSpec.cosh(1), 6.5),
])
def test_certify_corpus(spec, R):
    rep = zs.certify_real_zeros(spec, R, 1.0)
    assert rep.certified and rep.winding_count == 6
    assert rep.winding_count == rep.expected_winding()
    assert list(rep.real_zeros) == sorted(rep.real_zeros)
    F = transform_for(spec)
    for a in rep.real_zeros:
        v = F(ComplexPoint(-a))
        assert abs(v.re) <= 2 * v.error_estimate + abs(F(ComplexPoint(0)).re) * 1e-9


def test_certify_matches_oracle(oracles):
    rep = zs.certify_real_zeros(T4, 11.0)
    assert np.allclose(rep.real_zeros, oracles["f4_zeros"][:3], atol=1e-9)


def test_zeros_stable_under_step_halving():
    a = zs.certify_real_zeros(T4, 11.0, step=0.3)
    b = zs.certify_real_zeros(T4, 11.0, step=0.15)
    assert np.allclose(a.real_zeros, b.real_zeros, atol=10 * a.tol)


def test_mismatch_is_reported_not_raised():
    # zeros at +/- 2 on the axis and +/- 0.5i inside the rectangle
    F = analytic(lambda z: (z * z + 0.25) * (z * z - 4))
    rep = zs.certify(F, 3.0, 1.0, step=0.1, samples_per_side=128, max_refinements=1)
    assert not rep.certified
    assert rep.winding_count == 4 and len(rep.real_zeros) == 1
    assert any("mismatch" in n for n in rep.notes)


def test_origin_zero_counts_once():
    # an even function vanishes to even order at 0, so the single count
    # reserved for the origin cannot balance it: reported as a mismatch
    F = analytic(lambda z: z * z * (z * z - 4))
    rep = zs.certify(F, 3.0, 1.0, step=0.1, samples_per_side=128, max_refinements=0)
    assert rep.origin_zero
    assert rep.expected_winding() == 3 and rep.winding_count == 4
    assert not rep.certified
    assert rep.real_zeros == pytest.approx((2.0,))


def test_report_serialization():
    rep = zs.certify_real_zeros(T4, 8.0)
    d = rep.to_dict()
    assert d["rectangle"] == [[-8.0, 8.0], [-1.0, 1.0]]
    assert d["certified"] is True and len(d["real_zeros"]) == 2
    rows = zs.zeros_csv_rows(rep)
    assert [r[0] for r in rows] == [1, 2] and rows[0][2] == rep.tol


def test_estimate_order_examples():
    gauss = analytic(lambda z: math.sqrt(math.pi) * np.exp(-z * z / 4))
    assert 1.7 <= zs.estimate_order(gauss, [4, 8, 16]) <= 2.2
    rho = zs.estimate_order(F4, [4, 8, 16])
    assert rho < 2 and abs(rho - 4 / 3) <= 0.3
    const = analytic(lambda z: 5.0)
    assert abs(zs.estimate_order(const, [4, 8, 16])) < 1e-12


def test_estimate_order_rejects_bad_radii():
    with pytest.raises(ValueError):
        zs.estimate_order(F4, [4, 8])


@given(st.floats(0.5, 3.0), st.floats(0.2, 0.9))
def test_polynomial_two_paths_agree(a, b):
    # real zeros at +/- a only when b stays outside the rectangle height
    F = analytic(lambda z: (z * z - a * a) * (z * z + 4.0))
    rep = zs.certify(F, 3.5, b, step=0.05, samples_per_side=128)
    assert rep.certified and rep.real_zeros == pytest.approx((a,), abs=1e-9)
