import math

import numpy as np
import pytest
import scipy.special as sp
from hypothesis import given, strategies as st

from robinspec.core import Ball, ContourTouchesPole, Interval, PoleProximity
from robinspec.dtn import (DtnBranch, ball_multiplicity, dtn_alpha, dtn_pole_z, dtn_poles,
                           dtn_residue, interval_dtn_matrix)
from robinspec.specfun import bessel_zero

I1 = Interval(1.0)
EVEN, ODD = DtnBranch(I1, "even"), DtnBranch(I1, "odd")


def test_interval_examples():
    assert dtn_alpha(EVEN, 0) == 0
    assert dtn_alpha(ODD, 0) == pytest.approx(-1)
    lam = (math.pi / 4) ** 2
    assert dtn_alpha(EVEN, lam) == pytest.approx(math.pi / 4, rel=1e-14)
    assert dtn_alpha(ODD, lam) == pytest.approx(-math.pi / 4, rel=1e-14)


def test_ball_examples():
    assert dtn_alpha(DtnBranch(Ball(2), 3), 1e-14) == pytest.approx(-3, abs=1e-10)
    ref = sp.jv(1, 1) / sp.jv(0, 1)
    assert dtn_alpha(DtnBranch(Ball(2), 0), 1) == pytest.approx(ref, rel=1e-13)
    for l in range(5):
        ref = sp.jv(l + 1, 1) / sp.jv(l, 1) - l
        assert dtn_alpha(DtnBranch(Ball(2), l), 1) == pytest.approx(ref, rel=1e-12)


def test_selector_validation():
    with pytest.raises(ValueError):
        DtnBranch(I1, "left")
    with pytest.raises(ValueError):
        DtnBranch(Ball(2), -1)


def test_pole_guard():
    with pytest.raises(PoleProximity):
        dtn_alpha(EVEN, (math.pi / 2) ** 2)
    with pytest.raises(PoleProximity):
        dtn_alpha(DtnBranch(Ball(2), 0), bessel_zero(0, 1) ** 2)


def test_poles():
    assert dtn_poles(EVEN, 5) == pytest.approx([(math.pi / 2) ** 2, (3 * math.pi / 2) ** 2])
    both = sorted(dtn_poles(EVEN, 30) + dtn_poles(ODD, 30))
    ref = [(math.pi * j / 2) ** 2 for j in range(1, 100) if math.pi * j / 2 <= 30]
    assert both == pytest.approx(ref)
    assert dtn_poles(DtnBranch(Ball(2), 0), 12) == pytest.approx(sp.jn_zeros(0, 4) ** 2)


def test_residues():
    r = dtn_residue(DtnBranch(Ball(2), 0), 1)
    assert r == pytest.approx(-bessel_zero(0, 1), rel=1e-6)
    assert dtn_residue(EVEN, 1) == pytest.approx(-math.pi / 2, rel=1e-8)
    for br, k in [(ODD, 2), (DtnBranch(Ball(3), 2), 3), (EVEN, 4)]:
        r = dtn_residue(br, k)
        assert abs(r.imag) < 1e-10 * abs(r)
        zk = dtn_pole_z(br, 100)[k - 1]
        a = br.domain.a if br.is_interval else 1.0
        assert r.real == pytest.approx(-zk / a, rel=1e-8)


def test_residue_contour_on_pole_fails():
    with pytest.raises(ContourTouchesPole):
        dtn_residue(EVEN, 1, radius=math.pi)     # circle passes through the next pole


def test_multiplicity():
    assert ball_multiplicity(2, 3) == 5
    assert [ball_multiplicity(l, 2) for l in range(5)] == [1, 2, 2, 2, 2]
    assert ball_multiplicity(2, 4) == 9
    assert all(ball_multiplicity(l, 3) == 2 * l + 1 for l in range(10))


def test_multiplicity_by_harmonic_polynomials():
    # dimension of degree-l harmonics = dim P_l - dim P_{l-2} in d variables
    for d in (2, 3, 4, 5):
        for l in range(6):
            dim = math.comb(l + d - 1, d - 1) - (math.comb(l + d - 3, d - 1) if l >= 2 else 0)
            assert ball_multiplicity(l, d) == dim


def test_interval_matrix_identification(rng):
    for _ in range(100):
        lam = complex(rng.uniform(-20, 60), rng.uniform(-20, 20))
        try:
            ev = np.sort_complex(np.linalg.eigvals(interval_dtn_matrix(lam, 1.0)))
            ref = np.sort_complex(np.array([dtn_alpha(EVEN, lam), dtn_alpha(ODD, lam)]))
        except PoleProximity:
            continue
        assert np.max(np.abs(ev - ref)) <= 1e-9 * max(1, np.max(np.abs(ref)))


@given(st.floats(-30, 60), st.floats(-30, 30), st.sampled_from(["even", "odd", 0, 1, 3]))
def test_conjugation_symmetry(x, y, sel):
    br = DtnBranch(I1 if isinstance(sel, str) else Ball(2), sel)
    lam = complex(x, y)
    if y == 0 and x < 0:
        return      # cut of the square root; the branch function is even in z anyway
    try:
        v = dtn_alpha(br, lam)
        w = dtn_alpha(br, lam.conjugate())
    except PoleProximity:
        return
    assert w == pytest.approx(v.conjugate(), rel=1e-10, abs=1e-12)


def test_branches_cross_only_at_zero(rng):
    for _ in range(200):
        lam = complex(rng.uniform(-20, 60), rng.uniform(-20, 20))
        try:
            d = abs(dtn_alpha(EVEN, lam) - dtn_alpha(ODD, lam))
        except PoleProximity:
            continue
        assert d > 1e-6
    assert dtn_alpha(ODD, 0) != dtn_alpha(EVEN, 0)


def test_interval_asymptotics():
    for x in (5.0, 20.0, 80.0):
        z = x + 30j
        lam = z * z
        for br, sgn in ((EVEN, 1), (ODD, -1)):
            # with Im z > 0: z tan(za) -> i z, -z cot(za) -> i z
            err = abs(dtn_alpha(br, lam) - 1j * z)
            assert err <= 10 * abs(z) * math.exp(-2 * 30)


def test_ball_asymptotics():
    for d in (2, 3):
        for x in (10.0, 40.0, 160.0):
            z = x + 30j
            err = abs(dtn_alpha(DtnBranch(Ball(d), 0), z * z) - (1j * z + (d - 1) / 2))
            assert err <= 2.0 / abs(z)
