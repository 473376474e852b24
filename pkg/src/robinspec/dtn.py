"""
Dirichlet-to-Neumann eigenvalue functions on the model domains.

Interval ``(-a, a)``: the DtN operator is the 2x2 matrix

    M(lam) = z [[-cot 2za, csc 2za], [csc 2za, -cot 2za]],   z = sqrt(lam),

whose eigenvalues are ``z tan(za)`` (even data) and ``-z cot(za)`` (odd data).
These equal the matrix eigenvalues ``-z cot 2za +- z csc 2za`` through the
half-angle identities ``csc w - cot w = tan(w/2)`` and
``-csc w - cot w = -cot(w/2)``.

Ball: on degree-``l`` spherical harmonics the DtN eigenvalue is

    alpha_l(lam) = z J_{m+1}(z) / J_m(z) - l,   m = d/2 + l - 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (Ball, ContourTouchesPole, Interval, PoleProximity, RobinError,
                   principal_sqrt)
from .specfun import bessel_j_ratio, bessel_zero, cot_c, csc_c

__all__ = ["DtnBranch", "interval_dtn_matrix", "dtn_alpha", "dtn_alpha_z",
           "dtn_poles", "dtn_pole_z", "dtn_residue", "ball_multiplicity",
           "DTN_POLE_GUARD"]

DTN_POLE_GUARD = 1e-8


@dataclass(frozen=True)
class DtnBranch:
    """One DtN eigenvalue branch.

    ``selector`` is ``"even"``/``"odd"`` on an interval and the angular index
    ``l`` on a ball.
    """
    domain: Interval | Ball
    selector: object

    def __post_init__(self):
        if isinstance(self.domain, Interval):
            if self.selector not in ("even", "odd"):
                raise ValueError("interval selector must be 'even' or 'odd'")
        elif isinstance(self.domain, Ball):
            if int(self.selector) != self.selector or self.selector < 0:
                raise ValueError("ball selector must be an integer l >= 0")
            object.__setattr__(self, "selector", int(self.selector))
        else:
            raise TypeError("DtN branches exist for intervals and balls only")

    @property
    def is_interval(self):
        return isinstance(self.domain, Interval)

    @property
    def order(self) -> float:
        """Bessel order ``m = d/2 + l - 1`` of a ball branch."""
        return self.domain.d / 2 + self.selector - 1

    @property
    def label(self):
        return self.selector


def interval_dtn_matrix(lam, a: float) -> np.ndarray:
    """The 2x2 DtN matrix of ``(-a, a)`` at ``lam``; near ``lam = 0`` a Taylor form is used."""
    lam = complex(lam)
    z = principal_sqrt(lam)
    _interval_pole_guard(z, a, "both")
    w = 2.0 * z * a
    if abs(w) < 1e-3:
        # z cot(2za) = 1/(2a) - 2a lam/3 - ..., z csc(2za) = 1/(2a) + a lam/3 + ...
        zc = 1.0 / (2 * a) - 2 * a * lam / 3 - 8 * a ** 3 * lam ** 2 / 45
        zs = 1.0 / (2 * a) + a * lam / 3 + 7 * a ** 3 * lam ** 2 / 45
    else:
        zc = z * cot_c(w)
        zs = z * csc_c(w)
    return np.array([[-zc, zs], [zs, -zc]], dtype=complex)


def _interval_pole_guard(z, a, parity):
    # even poles: za = (k - 1/2) pi; odd poles: za = k pi, k >= 1
    zr = z if z.real >= 0 else -z
    x = zr * a / np.pi
    cands = []
    if parity in ("even", "both"):
        k = max(round(x.real - 0.5), 0)
        cands.append((k + 0.5) * np.pi / a)
    if parity in ("odd", "both"):
        k = max(round(x.real), 1)
        cands.append(k * np.pi / a)
    for c in cands:
        if abs(zr - c) < DTN_POLE_GUARD:
            raise PoleProximity(f"z = {z} within the pole guard of {c}")


def dtn_alpha_z(branch: DtnBranch, z):
    """DtN eigenvalue as a function of ``z`` (even in ``z``)."""
    z = complex(z)
    if branch.is_interval:
        a = branch.domain.a
        _interval_pole_guard(z, a, branch.selector)
        w = z * a
        if abs(w) < 1e-4:
            w2 = w * w
            if branch.selector == "even":
                # z tan(za) = a z^2 (1 + w^2/3 + 2w^4/15)
                return a * z * z * (1 + w2 / 3 + 2 * w2 * w2 / 15)
            # -z cot(za) = -(1/a)(1 - w^2/3 - w^4/45)
            return -(1 - w2 / 3 - w2 * w2 / 45) / a
        if branch.selector == "even":
            # tan w = cot(pi/2 - w)
            return z * cot_c(np.pi / 2 - w)
        return -z * cot_c(w)
    m = branch.order
    l = branch.selector
    try:
        r = bessel_j_ratio(m, z)
    except PoleProximity:
        raise PoleProximity(f"z = {z} within the pole guard of a zero of J_{m:g}") from None
    return z * r - l


def dtn_alpha(branch: DtnBranch, lam):
    """DtN eigenvalue ``alpha(lam)`` of the branch."""
    return dtn_alpha_z(branch, principal_sqrt(complex(lam)))


def dtn_pole_z(branch: DtnBranch, z_max: float) -> list[float]:
    """Poles in the ``z`` variable, ``0 < z <= z_max``, ascending."""
    out = []
    if branch.is_interval:
        a = branch.domain.a
        k = 1
        while True:
            z = ((k - 0.5) if branch.selector == "even" else k) * np.pi / a
            if z > z_max:
                break
            out.append(z)
            k += 1
        return out
    m = branch.order
    p = 1
    while True:
        j = bessel_zero(m, p)
        if j > z_max:
            break
        out.append(j)
        p += 1
    return out


def dtn_poles(branch: DtnBranch, z_max: float) -> list[float]:
    """Poles ``lam = z**2`` of the branch with ``sqrt(lam) <= z_max``, ascending.

    These are Dirichlet eigenvalues: ``((2k-1) pi/(2a))**2`` (even),
    ``(k pi/a)**2`` (odd), ``j_{m,p}**2`` (ball, ``m = d/2 + l - 1``).
    """
    if z_max <= 0:
        raise ValueError("z_max must be positive")
    return [z * z for z in dtn_pole_z(branch, z_max)]


def dtn_residue(branch: DtnBranch, pole_index: int, radius: float | None = None) -> complex:
    """Residue of ``z -> alpha(z**2)`` at the ``pole_index``-th pole, by contour quadrature.

    Trapezoid rule on a circle of radius ``min(1e-2, half the distance to the
    nearest other pole)`` with 256 nodes, checked against 512 nodes.
    Analytically the residue is ``-z_k/a`` on the interval and ``-j_{m,p}`` on
    the ball.
    """
    if pole_index < 1:
        raise ValueError("pole_index must be >= 1")
    zk = None
    zmax = 10.0
    while zk is None:
        poles = dtn_pole_z(branch, zmax)
        if len(poles) > pole_index:
            zk = poles[pole_index - 1]
            neighbours = poles[max(pole_index - 2, 0):pole_index + 1]
        zmax *= 2
    gaps = [abs(p - zk) for p in neighbours if p != zk] + [zk]   # zk: distance to -zk is 2zk
    rho = min(1e-2, 0.5 * min(gaps)) if radius is None else radius
    # midpoint nodes can straddle a pole on the circle symmetrically, so check geometry
    for p in list(neighbours) + [-zk]:
        if p != zk and abs(abs(p - zk) - rho) <= 1e-6 * rho:
            raise ContourTouchesPole(f"residue contour passes through the pole at z = {p}")

    def quad(n):
        th = 2 * np.pi * (np.arange(n) + 0.5) / n
        pts = zk + rho * np.exp(1j * th)
        vals = np.array([dtn_alpha_z(branch, p) for p in pts])
        # (1/2 pi i) \oint f dz, dz = i rho e^{i th} dth
        return np.mean(vals * rho * np.exp(1j * th))

    try:
        r256 = quad(256)
        r512 = quad(512)
    except PoleProximity as exc:
        raise ContourTouchesPole(str(exc)) from None
    if abs(r256 - r512) > 1e-8 * max(1.0, abs(r512)):
        raise ContourTouchesPole("trapezoid rule not converged on the residue contour")
    return complex(r512)


def ball_multiplicity(l: int, d: int) -> int:
    """Dimension of degree-``l`` spherical harmonics in ``d`` dimensions."""
    if l < 0 or d < 2:
        raise ValueError("need l >= 0 and d >= 2")
    out = math.comb(d + l - 1, l)
    if l >= 2:
        out -= math.comb(d + l - 3, l - 2)
    return out
