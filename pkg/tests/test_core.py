import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from robinspec.core import (Ball, Hyperrectangle, Interval, LambdaRegion, RegionSpec, Sector,
                            ball_constants, lambda_region_contains, principal_sqrt)

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


def test_principal_sqrt_examples():
    assert principal_sqrt(4) == 2
    assert principal_sqrt(-1) == 1j
    assert abs(principal_sqrt(2j) - (1 + 1j)) < 1e-15


def test_negative_real_axis_maps_to_upper_half_plane():
    # both -1 + 0i and -1 - 0i land on +i
    assert principal_sqrt(complex(-1.0, -0.0)) == 1j
    assert principal_sqrt(complex(-4.0, 0.0)) == 2j


@given(finite, finite)
def test_principal_sqrt_properties(x, y):
    z = complex(x, y)
    w = principal_sqrt(z)
    assert w.real >= 0
    assert abs(w * w - z) <= 8 * np.finfo(float).eps * max(abs(z), 1e-300)
    if y == 0 and x < 0:
        assert w.imag > 0
    elif z != 0:
        assert principal_sqrt(z.conjugate()) == pytest.approx(w.conjugate(), rel=1e-15, abs=1e-300)


def test_sector_membership():
    T = Sector("T_plus", 0.2)
    assert T.contains(1.0) and not T.contains(1j)
    S = Sector("S_plus", math.pi / 4)
    assert S.contains(1j) and not S.contains(1.0) and not S.contains(-1j)
    assert Sector("S_minus", math.pi / 4).contains(-1j)
    assert Sector("T_minus", 0.2).contains(-5 + 0.1j)


def test_domains_validate():
    with pytest.raises(ValueError):
        Interval(0)
    with pytest.raises(ValueError):
        Hyperrectangle((1, -1))
    with pytest.raises(ValueError):
        Ball(1)
    assert Ball(3).boundary_measure / Ball(3).volume == pytest.approx(3)
    assert ball_constants(2) == (2.0, 4.0)


def test_region_examples():
    C1, C2 = ball_constants(2)
    assert lambda_region_contains(LambdaRegion(1 + 1j, C1, C2), 0)
    lam = -(C1 ** 2 / 4) * 100 - C2 * 10 - 1
    assert not lambda_region_contains(LambdaRegion(-10, C1, C2), lam)
    assert lambda_region_contains(LambdaRegion(-10, C1, C2), lam + 2)
    assert lambda_region_contains(LambdaRegion(1j, C1, C2), 1 + 1j * (C1 + C2))
    assert not lambda_region_contains(LambdaRegion(1j, C1, C2), 1 + 1j * (C1 + C2 + 1e-6))


def test_degenerate_strip_requires_real_lambda():
    reg = LambdaRegion(-1.0)
    assert lambda_region_contains(reg, -1.0)
    assert not lambda_region_contains(reg, -1.0 + 1e-3j)


@given(st.floats(-20, 20), st.floats(-20, 20), finite, finite,
       st.floats(0, 5), st.floats(0, 5))
def test_region_monotone_in_constants(ar, ai, lr, li, d1, d2):
    lam = complex(lr, li) * 1e-4
    small = LambdaRegion(complex(ar, ai), 2.0, 1.0)
    big = LambdaRegion(complex(ar, ai), 2.0 + d1, 1.0 + d2)
    if lambda_region_contains(small, lam):
        assert lambda_region_contains(big, lam)


@given(st.floats(0.01, 10), st.floats(0, 50), st.floats(0, 20))
def test_region_decomposition_roundtrip(ai, t, frac):
    # lam = t + alpha s with s on or under the parabola boundary is contained
    alpha = complex(-1.0, ai)
    s = min(frac, 2 * math.sqrt(t) + 4)
    assert lambda_region_contains(LambdaRegion(alpha), t + alpha * s, rtol=1e-9)


def test_regionspec_split_and_corners():
    r = RegionSpec(0, 4, -1, 1)
    a, b = r.split()
    assert a.re_max == b.re_min == 2
    c = r.corners()
    assert len(c) == 4 and c[0] == complex(0, -1)
    assert r.contains(1 + 0.5j) and not r.contains(5)
    assert r.dilated(0.1).contains(4.05)
