"""
Overflow-safe complex trigonometry and Bessel functions of real order.

Bessel values are built from the reduced function

    Jh_m(z) = (z/2)**(-m) * J_m(z) = sum_k (-z**2/4)**k / (k! Gamma(m+k+1)),

which is entire and even in z.  Orders in ``[0, 2)`` are evaluated directly
(ascending series for ``|z| <= 12``, Hankel P/Q expansion beyond); higher
orders are reached with ratios ``rho_n = Jh_n / Jh_{n-1}`` from a backward
(Miller) recurrence,

    rho_n = 1 / (n - z**2/4 * rho_{n+1}),

which is stable for every order and argument.  Magnitudes are carried as a
separate log-scale so nothing overflows for large ``|Im z|``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import rgamma

from .core import BesselOverflow, NonConvergence, PoleProximity

__all__ = ["cot_c", "csc_c", "bessel_j", "bessel_j_scaled", "bessel_j_ratio",
           "bessel_zero", "reduced_bessel", "Z_MAX", "R_SWITCH"]

Z_MAX = 1e5
R_SWITCH = 12.0
TRIG_POLE_GUARD = 1e-12
BESSEL_POLE_GUARD = 1e-8


def _scalar_or_array(x, like):
    if np.ndim(like) == 0:
        return complex(np.asarray(x).reshape(-1)[0])
    return x


# ---------------------------------------------------------------------------
# trigonometry

def _trig_pole_check(z, period_shift):
    # distance to the nearest k*pi + period_shift on the real axis
    x = (z.real - period_shift) / np.pi
    d = np.hypot((x - np.round(x)) * np.pi, z.imag)
    if np.any(d < TRIG_POLE_GUARD):
        raise PoleProximity("argument within 1e-12 of a pole")


def cot_c(z):
    """Cotangent, using ``cot z = i (1 + 2/(e^{2iz} - 1))`` off the real axis.

    For ``Im z > 0`` this is rewritten with ``q = e^{2iz}`` (``|q| < 1``) as
    ``-i (1 + q)/(1 - q)``; for ``Im z < 0`` with ``q = e^{-2iz}``.
    """
    zz = np.asarray(z, dtype=complex)
    _trig_pole_check(zz, 0.0)
    out = np.empty(zz.shape, complex)
    big = np.abs(zz.imag) > 1.0
    if np.any(~big):
        zs = zz[~big]
        out[~big] = np.cos(zs) / np.sin(zs)
    if np.any(big):
        zb = zz[big]
        sgn = np.sign(zb.imag)
        q = np.exp(2j * sgn * zb)
        out[big] = -1j * sgn * (1 + q) / (1 - q)
    return _scalar_or_array(out, z)


def csc_c(z):
    """Cosecant; ``csc z = 2i/(e^{iz} - e^{-iz})`` evaluated without overflow."""
    zz = np.asarray(z, dtype=complex)
    _trig_pole_check(zz, 0.0)
    out = np.empty(zz.shape, complex)
    big = np.abs(zz.imag) > 1.0
    if np.any(~big):
        out[~big] = 1.0 / np.sin(zz[~big])
    if np.any(big):
        zb = zz[big]
        sgn = np.sign(zb.imag)
        # multiply numerator and denominator by e^{-|Im z|}-sized factor
        e = np.exp(1j * sgn * zb)          # |e| = e^{-|Im z|}
        out[big] = 2j * sgn * e / (e * e - 1)
    return _scalar_or_array(out, z)


# ---------------------------------------------------------------------------
# base orders

def _series_reduced(nu, z, nterms=80):
    """Ascending series of ``Jh_nu(z)`` (unscaled)."""
    w = -0.25 * z * z
    term = np.full(z.shape, rgamma(nu + 1.0), complex)
    total = term.copy()
    for k in range(1, nterms):
        term = term * w / (k * (nu + k))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return total


def _hankel_pq(nu, z, kmax=60):
    """Hankel P and Q sums, truncated at the smallest term."""
    mu = 4.0 * nu * nu
    term = np.ones(z.shape, complex)
    P = np.ones(z.shape, complex)
    Q = np.zeros(z.shape, complex)
    done = np.zeros(z.shape, bool)
    last = np.ones(z.shape)
    inv8z = 1.0 / (8.0 * z)
    for k in range(1, kmax):
        term = term * (mu - (2 * k - 1) ** 2) * inv8z / k
        mag = np.abs(term)
        grow = mag > last
        done |= grow
        add = np.where(done, 0.0, term)
        if k % 2 == 1:
            Q += ((-1) ** ((k - 1) // 2)) * add
        else:
            P += ((-1) ** (k // 2)) * add
        last = np.where(done, last, mag)
        done |= mag < 1e-17
        if np.all(done):
            break
    return P, Q


def _hankel_scaled(nu, z):
    """``J_nu(z) e^{-|Im z|}`` from the Hankel expansion (``Re z > 0``)."""
    P, Q = _hankel_pq(nu, z)
    chi = z - (0.5 * nu + 0.25) * np.pi
    s = np.abs(z.imag)
    ep = np.exp(1j * chi - s)        # e^{i chi} e^{-|Im z|}, bounded
    em = np.exp(-1j * chi - s)
    return np.sqrt(2.0 / (np.pi * z)) * 0.5 * ((P + 1j * Q) * ep + (P - 1j * Q) * em)


def _base_reduced_scaled(nu, z):
    """``Jh_nu(z) e^{-|Im z|}`` for ``nu < 2`` and ``Re z >= 0``."""
    out = np.empty(z.shape, complex)
    small = np.abs(z) <= R_SWITCH
    if np.any(small):
        zs = z[small]
        out[small] = _series_reduced(nu, zs) * np.exp(-np.abs(zs.imag))
    if np.any(~small):
        zb = z[~small]
        out[~small] = _hankel_scaled(nu, zb) / (0.5 * zb) ** nu
    return out


def _miller_ratios(nu0, kmax, z):
    """Ratios ``rho_{nu0+k} = Jh_{nu0+k}/Jh_{nu0+k-1}`` for ``k = 1..kmax``.

    Returns an array of shape ``(kmax + 1, len(z))``; row 0 is unused.
    """
    w = 0.25 * z * z
    top = kmax + int(np.ceil(np.max(np.abs(z), initial=0.0))) + 40
    rho = np.zeros(z.shape, complex)
    out = np.zeros((kmax + 1,) + z.shape, complex)
    for k in range(top, 0, -1):
        den = (nu0 + k) - w * rho
        # an exact zero of Jh_{nu0+k-1}; nudge so the product stays finite
        den = np.where(den == 0, 1e-300, den)
        rho = 1.0 / den
        if k <= kmax:
            out[k] = rho
    return out


def reduced_bessel(m: float, z, extra: int = 2):
    """Scaled reduced Bessel values for orders ``m, m+1, ..., m+extra``.

    Returns ``(vals, logscale)`` with ``Jh_{m+k}(z) = vals[k] * exp(logscale)``.
    ``vals[0]`` has modulus one except at exact zeros.  Parity of ``Jh`` is
    used to reflect into ``Re z >= 0``.
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    z = np.where(z.real < 0, -z, z)
    K = int(math.floor(m))
    nu0 = m - K
    ratios = _miller_ratios(nu0, max(K + extra, 1), z)
    # normalise on the larger of the two base values to avoid a nearby zero
    b0 = _base_reduced_scaled(nu0, z)
    b1 = _base_reduced_scaled(nu0 + 1.0, z)
    use1 = np.abs(b1 * 0.5 * z) > np.abs(b0)
    cur = np.where(use1, b1 / np.where(use1, ratios[1], 1.0), b0)
    logscale = np.abs(z.imag).astype(float)
    mag = np.abs(cur)
    safe = mag > 0
    logscale = logscale + np.log(np.where(safe, mag, 1.0))
    cur = np.where(safe, cur / np.where(safe, mag, 1.0), cur)
    for k in range(1, K + 1):
        cur = cur * ratios[k]
        mag = np.abs(cur)
        safe = mag > 0
        logscale = logscale + np.log(np.where(safe, mag, 1.0))
        cur = np.where(safe, cur / np.where(safe, mag, 1.0), cur)
    vals = np.empty((extra + 1,) + z.shape, complex)
    vals[0] = cur
    for j in range(1, extra + 1):
        vals[j] = vals[j - 1] * ratios[K + j]
    return vals, logscale


# ---------------------------------------------------------------------------
# public Bessel API

def _check_z(z):
    if np.any(np.abs(z) > Z_MAX):
        raise ValueError(f"|z| exceeds Z_MAX = {Z_MAX:g}")


def _power_log(m, z):
    """``log((z/2)^m)`` on the principal branch (real part, argument)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        return m * np.log(np.abs(z) / 2.0), m * np.angle(z)


def bessel_j_scaled(m: float, z):
    """Return ``(J_m(z) e^{-|Im z|}, |Im z|)``."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_z(zz)
    vals, logscale = reduced_bessel(m, zz, extra=0)
    lr, ar = _power_log(m, zz)
    expo = logscale - np.abs(zz.imag) + np.where(zz == 0, 0.0, lr)
    val = vals[0] * np.exp(expo + 1j * ar)
    if m > 0:
        val = np.where(zz == 0, 0.0, val)
    s = np.abs(zz.imag)
    if np.ndim(z) == 0:
        return complex(val[0]), float(s[0])
    return val, s


def bessel_j(m: float, z):
    """Bessel function ``J_m(z)`` of real order ``m >= 0`` and complex argument."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_z(zz)
    vals, logscale = reduced_bessel(m, zz, extra=0)
    lr, ar = _power_log(m, zz)
    expo = logscale + np.where(zz == 0, 0.0, lr)
    if np.any(expo > 709.0):
        raise BesselOverflow("J_m(z) overflows; use bessel_j_scaled")
    val = vals[0] * np.exp(expo + 1j * ar)
    if m > 0:
        val = np.where(zz == 0, 0.0, val)
    return _scalar_or_array(val, z) if np.ndim(z) == 0 else val


def bessel_j_ratio(m: float, z):
    """``J_{m+1}(z)/J_m(z)`` from the backward recurrence.

    Near a zero ``j`` of ``J_m`` the ratio behaves like ``-1/(z - j)``, so a
    modulus above ``1/BESSEL_POLE_GUARD`` signals pole proximity.
    """
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    _check_z(zz)
    zr = np.where(zz.real < 0, -zz, zz)
    K = int(math.floor(m))
    rho = _miller_ratios(m - K, K + 1, zr)[K + 1]
    with np.errstate(over="ignore", invalid="ignore"):
        out = 0.5 * zz * rho
    if not np.all(np.isfinite(out)) or np.any(np.abs(out) * BESSEL_POLE_GUARD >= 1.0):
        raise PoleProximity("argument within the pole guard of a zero of J_m")
    return complex(out[0]) if np.ndim(z) == 0 else out


# ---------------------------------------------------------------------------
# zeros

def _jh_real(m, x):
    vals, logscale = reduced_bessel(m, np.asarray(x, float), extra=1)
    return vals[0].real, vals[1].real, logscale


def _mcmahon(m, p):
    beta = (p + 0.5 * m - 0.25) * np.pi
    mu = 4.0 * m * m
    e = 8.0 * beta
    return (beta - (mu - 1) / e - 4 * (mu - 1) * (7 * mu - 31) / (3 * e ** 3)
            - 32 * (mu - 1) * (83 * mu * mu - 982 * mu + 3779) / (15 * e ** 5))


def bessel_zero(m: float, p: int, tol: float = 1e-13) -> float:
    """The ``p``-th positive zero ``j_{m,p}`` of ``J_m``.

    A sign-change scan of the reduced function brackets the zero (consecutive
    zeros are more than 2.5 apart), McMahon's expansion gives the starting
    point when it falls inside the bracket, and safeguarded Newton with
    ``Jh_m' = -(z/2) Jh_{m+1}`` polishes it.
    """
    if p < 1 or int(p) != p:
        raise ValueError("p must be a positive integer")
    if m < 0:
        raise ValueError("order must be nonnegative")
    x0 = math.sqrt(m * (m + 2.0)) if m > 0 else 1e-3
    step = 0.5
    count = 0
    lo = hi = None
    start = x0
    while lo is None:
        span = (p - count + 2) * math.pi + 20.0
        xs = start + step * np.arange(int(span / step) + 2)
        f = _jh_real(m, xs)[0]
        s = np.sign(f)
        idx = np.nonzero(s[:-1] * s[1:] <= 0)[0]
        for i in idx:
            count += 1
            if count == p:
                lo, hi = xs[i], xs[i + 1]
                break
        start = xs[-1]
    guess = _mcmahon(m, p)
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    flo = _jh_real(m, lo)[0][0]
    for _ in range(100):
        f0, f1, _ls = _jh_real(m, x)
        f0, f1 = f0[0], f1[0]
        if f0 == 0.0:
            return float(x)
        if np.sign(f0) == np.sign(flo):
            lo, flo = x, f0
        else:
            hi = x
        deriv = -0.5 * x * f1
        xn = x - f0 / deriv if deriv != 0 else 0.5 * (lo + hi)
        if not lo < xn < hi:
            xn = 0.5 * (lo + hi)
        if abs(xn - x) <= tol * max(1.0, x):
            return float(xn)
        x = xn
    raise NonConvergence(f"bessel_zero({m}, {p}) did not converge")
