import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from robinspec.core import Ball, Interval
from robinspec.eig import QR_MAX, eigvals, hessenberg, hessenberg_eigvals
from robinspec.spectrum import robin_spectrum
from robinspec.verify import (defective_pair_demo, estimate_trace_constants, fd_eigenpairs,
                              fd_interval, fd_radial_ball, fd_rectangle, fd_spectrum,
                              gram_matrix, numerical_range_check, numerical_range_sample,
                              rayleigh_parts, richardson_order, riesz_condition)

I1 = Interval(1.0)


# -- eigensolver -------------------------------------------------------------

def test_hessenberg_structure_and_similarity(rng):
    A = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
    H = hessenberg(A)
    assert np.allclose(np.tril(H, -2), 0)
    assert np.trace(H) == pytest.approx(np.trace(A), rel=1e-12)
    assert np.linalg.norm(H) == pytest.approx(np.linalg.norm(A), rel=1e-12)


@pytest.mark.parametrize("n", [1, 2, 5, 40, 120])
def test_qr_matches_lapack(n, rng):
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    w = np.sort_complex(eigvals(A, "qr"))
    ref = np.sort_complex(np.linalg.eigvals(A))
    assert np.max(np.abs(w - ref)) <= 1e-10 * np.abs(ref).max()


def test_qr_on_fd_operator():
    op = fd_interval(1.0, 1 + 1j, 1 + 1j, 100)
    w = np.sort_complex(eigvals(op.symmetric(), "qr"))
    ref = np.sort_complex(np.linalg.eigvals(op.matrix))
    assert np.max(np.abs(w - ref)) <= 1e-10 * np.abs(ref).max()


def test_qr_handles_zero_and_jordan():
    assert np.allclose(hessenberg_eigvals(np.zeros((4, 4))), 0)
    J = np.diag([2.0, 2.0, 2.0]) + np.diag([1.0, 1.0], 1)
    assert np.allclose(eigvals(J, "qr"), 2, atol=1e-5)
    with pytest.raises(ValueError):
        eigvals(np.eye(2), "magic")


def test_auto_switch():
    assert QR_MAX == 200


# -- operators ---------------------------------------------------------------

def test_interval_neumann_fd():
    lam = np.real(fd_spectrum(fd_interval(1.0, 0, 0, 2000), 5))
    ref = np.array([(k * math.pi / 2) ** 2 for k in range(5)])
    assert np.all(np.abs(lam - ref) <= 1e-4 * np.maximum(ref, 1))


def test_interval_negative_fd():
    k = brentq(lambda x: x * math.tanh(x) - 2, 0.1, 10, xtol=1e-15)
    ko = brentq(lambda x: x / math.tanh(x) - 2, 0.1, 10, xtol=1e-15)
    lam = np.real(fd_spectrum(fd_interval(1.0, -2, -2, 1000), 2))
    # lowest is the even mode cosh(kappa x); the odd sinh mode has kappa coth kappa = 2
    assert lam[0] == pytest.approx(-k * k, rel=1e-3)
    assert lam[1] == pytest.approx(-ko * ko, rel=1e-3)


def test_row_sums_are_boundary_terms():
    op = fd_interval(1.0, 2 - 1j, 3j, 64)
    r = op.matrix @ np.ones(op.n)
    assert np.allclose(r[1:-1], 0, atol=1e-9)
    assert r[0] == pytest.approx((2 - 1j) / (op.h / 2))
    ball = fd_radial_ball(3, 0, -1.5, 50)
    r = ball.matrix @ np.ones(ball.n)
    assert np.allclose(r[:-1], 0, atol=1e-9)


def test_symmetrizable_for_real_alpha():
    assert fd_interval(1.0, 2.0, -1.0, 32).is_symmetrizable()
    assert fd_radial_ball(2, 1, 3.0, 32).is_symmetrizable()
    assert not fd_interval(1.0, 1j, 1j, 32).is_symmetrizable()


def test_input_validation():
    with pytest.raises(ValueError):
        fd_interval(1.0, 0, 0, 8)
    with pytest.raises(ValueError):
        fd_spectrum(fd_interval(1.0, 0, 0, 16), 0)


def test_kronecker_sum_consistency():
    n = 30
    al = 1.5 - 2j
    one = np.linalg.eigvals(fd_interval(1.0, al, al, n).symmetric())
    two = np.linalg.eigvals(fd_interval(0.5, al, al, n).symmetric())
    sums = np.sort_complex((one[:, None] + two[None, :]).ravel())
    rect = np.sort_complex(np.linalg.eigvals(fd_rectangle((1.0, 0.5), al, n).symmetric()))
    assert np.max(np.abs(rect - sums)) <= 1e-10 * np.abs(sums).max()


def test_sparse_and_dense_rectangle_agree():
    d = fd_spectrum(fd_rectangle((1, 1), 1 + 1j, 20), 15)
    s = fd_spectrum(fd_rectangle((1, 1), 1 + 1j, 20, sparse_format=True), 15)
    assert np.allclose(d, s, rtol=1e-10)


@pytest.mark.parametrize("d", [2, 3])
def test_radial_ball_matches_secular(d):
    al = -2 + 1j
    lam = np.array([r.lam for r in robin_spectrum(Ball(d), al, 15, l_values=[0])])[:5]
    fd = np.array(fd_spectrum(fd_radial_ball(d, 0, al, 400), 5))
    assert np.max(np.abs(fd - lam) / np.abs(lam)) <= 1e-3


def test_richardson_order_interval():
    al = 1 + 1j
    exact = np.array([r.lam for r in robin_spectrum(I1, al, 10)])[:5]
    vals = [np.array(fd_spectrum(fd_interval(1.0, al, al, n), 5)) for n in (250, 500, 1000, 2000)]
    assert richardson_order(vals, exact) == pytest.approx(2.0, abs=0.2)


@settings(max_examples=10)
@given(st.floats(-5, 5), st.floats(-5, 5))
def test_fd_conjugation(x, y):
    al = complex(x, y)
    a = fd_spectrum(fd_interval(1.0, al, al, 64), 10, "lapack")
    b = fd_spectrum(fd_interval(1.0, np.conj(al), np.conj(al), 64), 10, "lapack")
    b = np.conj(b)
    b = b[np.lexsort((b.imag, b.real))]
    assert np.allclose(a, b, rtol=1e-9, atol=1e-9)


# -- numerical range ---------------------------------------------------------

def test_constant_vector_form_value():
    for al in (2 - 3j, -1.0, 5j):
        op = fd_interval(1.0, al, al, 64)
        t, s, val = rayleigh_parts(op, np.ones(op.n))
        assert t[0] == pytest.approx(0, abs=1e-12)
        assert s[0] == pytest.approx(1.0)           # 2 boundary points / volume 2
        assert val[0] == pytest.approx(al)


@pytest.mark.parametrize("al", [-3, -3 + 2j, 4j])
def test_ball_numerical_range(al):
    op = fd_radial_ball(2, 0, al, 200)
    vals, inside = numerical_range_check(op, 200, seed=42)
    assert len(vals) == 200 and all(inside)
    ra = abs(complex(al).real)
    assert min(v.real for v in vals) >= -ra ** 2 - 4 * ra - 0.05 * (ra ** 2 + 4 * ra)


def test_imaginary_alpha_upper_half_plane():
    for op in (fd_interval(1.0, 1j, 1j, 100), fd_radial_ball(3, 2, 1j, 100)):
        assert all(v.imag >= 0 for v in numerical_range_sample(op, 100))


@pytest.mark.parametrize("al", [-2, 1 + 3j, -4 - 1j])
def test_interval_numerical_range(al):
    _, inside = numerical_range_check(fd_interval(1.0, al, al, 400), 200)
    assert all(inside)


def test_sampling_is_seeded():
    op = fd_interval(1.0, 1j, 1j, 50)
    assert numerical_range_sample(op, 20, seed=7) == numerical_range_sample(op, 20, seed=7)
    assert numerical_range_sample(op, 20, seed=7) != numerical_range_sample(op, 20, seed=8)


def test_trace_constants():
    C1, C2 = estimate_trace_constants(Ball(2), fd_radial_ball(2, 0, 0, 400))
    assert 1.5 <= C1 <= 2.2
    assert C2 >= 2.0 * (1 - 1e-4)    # constant vector: |boundary| / |volume| = 2
    C1, C2 = estimate_trace_constants(I1, fd_interval(1.0, 0, 0, 400))
    assert 1.5 <= C1 <= 2.2
    assert C2 >= 1.0 - 1e-9
    with pytest.raises(ValueError):
        estimate_trace_constants(Ball(2), fd_interval(1.0, 0, 0, 40))


# -- eigenvector geometry ----------------------------------------------------

def test_gram_real_alpha_orthonormal():
    G = gram_matrix(fd_interval(1.0, 1, 1, 400), 5)
    off = np.abs(G - np.diag(np.diag(G)))
    assert off.max() <= 1e-6
    assert np.allclose(np.diag(G), 1)


def test_gram_imaginary_alpha_not_orthogonal():
    G = gram_matrix(fd_interval(1.0, 1j, 1j, 400), 5)
    off = np.abs(G - np.diag(np.diag(G)))
    assert off.max() >= 1e-3
    assert np.allclose(G, G.conj().T)
    assert np.linalg.eigvalsh(G).min() > 0


def test_eigenpairs_residual():
    op = fd_interval(1.0, 2 + 1j, 2 + 1j, 300)
    lam, U = fd_eigenpairs(op, 6)
    for j in range(6):
        r = op.matrix @ U[:, j] - lam[j] * U[:, j]
        assert np.linalg.norm(r) <= 1e-8 * abs(lam[j]) * np.linalg.norm(U[:, j]) + 1e-8


def test_riesz_condition_real_alpha():
    assert riesz_condition(fd_interval(1.0, 2.0, 2.0, 200), 8) == pytest.approx(1, abs=1e-6)


def test_riesz_condition_bounded():
    conds = [riesz_condition(fd_interval(1.0, 1j, 1j, 50 * k), k) for k in (5, 10, 20, 40)]
    assert max(conds) < 5
    assert conds[-1] - conds[-2] < 0.1


def test_riesz_condition_grid_stable():
    c1 = riesz_condition(fd_interval(1.0, 2 + 3j, 2 + 3j, 300), 8)
    c2 = riesz_condition(fd_interval(1.0, 2 + 3j, 2 + 3j, 600), 8)
    assert abs(c1 - c2) <= 0.1 * c2


# -- defective pair ----------------------------------------------------------

@pytest.mark.slow
def test_defective_pair_demo_fingerprints():
    rep = defective_pair_demo(n=200, grids=(100, 200))
    assert rep.t_crossing == pytest.approx(math.pi / 2, abs=1e-3)
    # the exact discrete crossing persists: gaps are linear in the offset
    assert rep.exponent == pytest.approx(1.0, abs=0.1)
    # perturbing one endpoint at the crossing splits the pair like a Jordan block
    assert rep.perturbation_exponent == pytest.approx(0.5, abs=0.05)
    assert len(rep.gaps) == 5
