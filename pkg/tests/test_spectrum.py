import math

import numpy as np
import pytest
import scipy.special as sp
from scipy.optimize import brentq

from robinspec.core import (Ball, Hyperrectangle, Interval, LambdaRegion, PoleProximity,
                            ball_constants, lambda_region_contains)
from robinspec.spectrum import (accumulation_experiment, ball_l_max, duality_check,
                                duality_roundtrip, robin_spectrum)
from robinspec.verify import fd_radial_ball, fd_rectangle, fd_spectrum

I1 = Interval(1.0)


def expand(spec):
    return np.array([r.lam for r in spec for _ in range(r.multiplicity)])


def test_interval_neumann():
    lam = expand(robin_spectrum(I1, 0, 10))
    ref = [(k * math.pi / 2) ** 2 for k in range(7)]
    assert np.allclose(lam, ref, rtol=1e-13, atol=1e-13)
    assert all(r.certified for r in robin_spectrum(I1, 0, 10))


def test_interval_negative_eigenvalue():
    k = brentq(lambda x: x * math.tanh(x) - 2, 0.1, 10, xtol=1e-15)
    spec = robin_spectrum(I1, -2, 6)
    assert spec[0].lam.real == pytest.approx(-k * k, rel=1e-12)
    assert spec[0].symmetry == "even"


def test_zero_eigenvalue_crossing():
    # alpha = -1/a puts lam = 0 on the odd branch
    spec = robin_spectrum(I1, -1, 5)
    zero = [r for r in spec if abs(r.lam) < 1e-12]
    assert len(zero) == 1 and zero[0].symmetry == "odd"


def test_square_neumann_sums():
    lam = expand(robin_spectrum(Hyperrectangle((1, 1)), 0, 5))
    one = [(k * math.pi / 2) ** 2 for k in range(4)]
    ref = np.sort([x + y for x in one for y in one])
    assert np.allclose(np.sort(lam.real), ref, atol=1e-10)
    assert lam[1] == pytest.approx((math.pi / 2) ** 2)
    assert lam[2] == pytest.approx((math.pi / 2) ** 2)


def test_square_multiplicities_and_order():
    spec = robin_spectrum(Hyperrectangle((1, 1)), 3 + 1j, 6)
    keys = [(r.lam.real, r.lam.imag) for r in spec]
    assert keys == sorted(keys)
    # off-diagonal sums appear twice
    assert sum(r.multiplicity for r in spec) == len(robin_spectrum(I1, 3 + 1j, 6)) ** 2


def test_ball_against_fd():
    dom = Ball(2)
    al = -2.0
    spec = robin_spectrum(dom, al, 8)
    assert all(r.certified for r in spec)
    for l in sorted({r.symmetry for r in spec}):
        lam = np.sort([r.lam.real for r in spec if r.symmetry == l])
        fd = np.sort(np.real(fd_spectrum(fd_radial_ball(2, l, al, 800), len(lam))))
        # l = 2: r^2 e^{2i theta} gives lam = 0 exactly, so use an absolute floor there
        assert np.allclose(lam, fd, rtol=1e-4, atol=1e-4), l
        assert all(r.multiplicity == (1 if l == 0 else 2) for r in spec if r.symmetry == l)


def test_ball_l_truncation():
    assert ball_l_max(-2, 8) == 15


@pytest.mark.slow
def test_square_against_2d_fd():
    dom = Hyperrectangle((1, 1))
    for al in (3 + 1j, -1.5 + 0.5j):
        lam = expand(robin_spectrum(dom, al, 12))
        lam = lam[np.argsort(np.abs(lam), kind="stable")][:20]
        lam = lam[np.lexsort((lam.imag, lam.real))]
        fd = np.array(fd_spectrum(fd_rectangle((1, 1), al, 200), 20))
        assert np.max(np.abs(fd - lam) / np.abs(lam)) < 1e-3


def test_duality_examples():
    a_even, a_odd = duality_check(I1, (math.pi / 4) ** 2)
    assert a_even == pytest.approx(math.pi / 4, rel=1e-14)
    assert a_odd == pytest.approx(-math.pi / 4, rel=1e-14)
    vals = duality_check(Ball(2), 1.0, l_max=4)
    ref = [sp.jv(l + 1, 1) / sp.jv(l, 1) - l for l in range(5)]
    assert np.allclose(vals, ref, rtol=1e-12)


def test_duality_rejects_dirichlet_point():
    with pytest.raises(PoleProximity):
        duality_check(I1, (math.pi / 2) ** 2)


def test_duality_roundtrip_interval(rng):
    for _ in range(6):
        lam = complex(rng.uniform(-5, 20), rng.uniform(-5, 5))
        for sel, al, rel in duality_roundtrip(I1, lam):
            assert rel <= 1e-8, (lam, sel, al)


def test_duality_roundtrip_ball():
    for sel, al, rel in duality_roundtrip(Ball(2), 3 - 2j, l_max=2):
        assert rel <= 1e-8


def test_accumulation_ball_d2():
    vals = accumulation_experiment(Ball(2), 1 + 1j, 10)
    mods = np.abs(vals)
    assert len(vals) == 10 and np.all(np.diff(mods) > 0)
    assert np.all(np.diff(np.real(vals)[2:]) < 0)
    assert np.real(vals[-1]) < -7


def test_accumulation_interval_has_two_values():
    assert len(accumulation_experiment(I1, 2 + 1j, 10)) == 2


def test_accumulation_ball_d3_large_order():
    lam = 5.0
    vals = duality_check(Ball(3), lam, l_max=40)
    for l in range(20, 41):
        m = 1.5 + l - 1
        # J_{m+1}/J_m ~ z/(2(m+1)) for large order
        assert abs(vals[l] + l - lam / (2 * (m + 1))) <= 2 * lam ** 2 / (m + 1) ** 3


@pytest.mark.parametrize("al", [0, -1, 5])
def test_weyl_counting(al):
    Lam = 1e4
    spec = robin_spectrum(I1, al, math.sqrt(Lam) + 1)
    N = sum(r.multiplicity for r in spec if r.lam.real <= Lam)
    weyl = math.sqrt(Lam) * 2 / math.pi
    assert abs(N - weyl) <= 0.02 * weyl


def test_dirichlet_monotone_limit():
    prev = None
    for al in (1, 10, 100, 1000):
        lam = np.array([r.lam.real for r in robin_spectrum(I1, al, 9)])[:5]
        dirichlet = np.array([(j * math.pi / 2) ** 2 for j in range(1, 6)])
        assert np.all(lam < dirichlet)
        if prev is not None:
            assert np.all(lam > prev)
        prev = lam
    assert np.allclose(prev, dirichlet, rtol=3e-3)


@pytest.mark.parametrize("dom", [I1, Ball(2), Hyperrectangle((1, 0.5))])
def test_conjugate_alpha_gives_conjugate_spectrum(dom):
    al = -2 + 1.5j
    s1 = expand(robin_spectrum(dom, al, 6))
    s2 = expand(robin_spectrum(dom, np.conj(al), 6)).conj()
    assert s1.shape == s2.shape
    assert np.max(np.abs(np.sort_complex(s1) - np.sort_complex(s2))) < 1e-9 * (1 + np.abs(s1).max())


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("al", [-3, -3 + 2j, 4j, 2 - 5j])
def test_ball_spectra_lie_in_region(d, al):
    C1, C2 = ball_constants(d)
    reg = LambdaRegion(al, C1, C2)
    for r in robin_spectrum(Ball(d), al, 7):
        assert lambda_region_contains(reg, r.lam, rtol=1e-9)


def test_window_validation():
    with pytest.raises(ValueError):
        robin_spectrum(I1, 0, 0)
    with pytest.raises(TypeError):
        robin_spectrum("disk", 0, 1)
