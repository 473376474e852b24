"""
Secular functions and certified root search in the ``z = sqrt(lam)`` plane.

Each branch is represented by a function ``G`` that is even in ``z`` and hence
entire in ``lam``:

* interval even   ``G = z sin(za) - alpha cos(za)``
* interval odd    ``G = cos(za) + alpha sin(za)/z``         (``g_odd / z``)
* ball, index l   ``G = (z^2/2) Jh_{m+1} - (l + alpha) Jh_m``  (``g_ball / (z/2)^m``)

with ``Jh_m = (z/2)^{-m} J_m``.  Removing the trivial factors keeps the
zero sets identical away from ``z = 0`` and makes ``z = 0`` a double root
exactly when ``lam = 0`` is an eigenvalue.  Every evaluation returns values
multiplied by one positive real factor (``e^{-a|Im z|}`` or the Bessel
log-scale), which changes neither arguments nor Newton steps.

Zeros are counted with the argument principle on rectangles and located by
Newton's method; cells are bisected until the count is matched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (BoundaryZero, NonConvergence, RegionSpec, UnresolvedCluster,
                   principal_sqrt)
from .dtn import DtnBranch, dtn_pole_z
from .specfun import reduced_bessel

__all__ = ["SecularFunction", "RootInfo", "RootCertificate", "winding_count",
           "find_roots", "newton_polish", "secular_scale"]

MERGE_RTOL = 1e-7
RESIDUAL_RTOL = 1e-9
MAX_SAMPLES = 2 ** 20


def _sinc_series(w2, nterms=14):
    # sum (-1)^k w^{2k}/(2k+1)!
    out = np.zeros_like(w2)
    term = np.ones_like(w2)
    for k in range(nterms):
        out = out + term
        term = -term * w2 / ((2 * k + 2) * (2 * k + 3))
    return out


def _t_series(w2, nterms=14):
    # (sin w - w cos w)/w^3 = sum_{k>=1} (-1)^{k+1} 2k w^{2k-2}/(2k+1)!
    out = np.zeros_like(w2)
    fact = 6.0                  # (2k+1)! at k = 1
    wp = np.ones_like(w2)       # w^{2k-2}
    for k in range(1, nterms):
        out = out + (-1) ** (k + 1) * 2 * k * wp / fact
        wp = wp * w2
        fact *= (2 * k + 2) * (2 * k + 3)
    return out


class SecularFunction:
    """Secular function of one DtN branch at fixed ``alpha``."""

    def __init__(self, branch: DtnBranch, alpha):
        self.branch = branch
        self.alpha = complex(alpha)

    def __repr__(self):
        return f"SecularFunction({self.branch.domain!r}, {self.branch.selector!r}, alpha={self.alpha})"

    # -- evaluation ---------------------------------------------------------

    def derivatives(self, z):
        """Scaled ``(G, dG/dlam, dG/dalpha)`` at ``z`` (arrays)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if self.branch.is_interval:
            return self._interval(z)
        return self._ball(z)

    def _interval(self, z):
        a = self.branch.domain.a
        al = self.alpha
        w = z * a
        s_abs = np.abs(w.imag)
        e1 = np.exp(1j * w - s_abs)
        e2 = np.exp(-1j * w - s_abs)
        c = 0.5 * (e1 + e2)
        s = -0.5j * (e1 - e2)
        small = np.abs(w) < 0.5
        zsafe = np.where(small, 1.0, z)
        w2 = w * w
        S = np.where(small, a * _sinc_series(w2) * np.exp(-s_abs), s / zsafe)
        if self.branch.selector == "even":
            G = z * s - al * c
            Gl = 0.5 * ((1 + al * a) * S + a * c)
            Ga = -c
        else:
            T = np.where(small, a ** 3 * _t_series(w2) * np.exp(-s_abs),
                         (s - w * c) / zsafe ** 3)
            G = c + al * S
            Gl = -0.5 * (a * S + al * T)
            Ga = S
        return G, Gl, Ga

    def _ball(self, z):
        l = self.branch.selector
        m = self.branch.order
        vals, _ls = reduced_bessel(m, z, extra=2)
        J0, J1, J2 = vals
        la = l + self.alpha
        z2 = z * z
        G = 0.5 * z2 * J1 - la * J0
        Gl = 0.5 * J1 - 0.125 * z2 * J2 + 0.25 * la * J1
        Ga = -J0
        return G, Gl, Ga

    def evaluate(self, z):
        """Scaled ``(g, dg/dz)``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        G, Gl, _ = self.derivatives(z)
        return G, 2.0 * z * Gl

    def __call__(self, z):
        return self.derivatives(z)[0]

    def value_at_zero(self) -> complex:
        """Unscaled ``G(0)``; zero iff ``lam = 0`` is an eigenvalue of the branch."""
        if self.branch.is_interval:
            a = self.branch.domain.a
            return -self.alpha if self.branch.selector == "even" else 1 + self.alpha * a
        m = self.branch.order
        return -(self.branch.selector + self.alpha) / math.gamma(m + 1)

    def phase_rate(self) -> float:
        """Rough bound on the phase speed of ``G`` along horizontal lines."""
        if self.branch.is_interval:
            return max(self.branch.domain.a, 0.2)
        return 1.0

    # -- seeds --------------------------------------------------------------

    def seeds(self, z_max: float) -> np.ndarray:
        """Newton seeds from the asymptotic regimes, folded into ``Re z >= 0``."""
        al = self.alpha
        pts = []
        poles = dtn_pole_z(self.branch, z_max)
        if self.branch.is_interval:
            a = self.branch.domain.a
            pts.append(-1j * al)
            k0 = 0 if self.branch.selector == "even" else 0.5
            k = k0
            while k * np.pi / a <= z_max:
                pts.append(k * np.pi / a)
                k += 1
            if al != 0:
                pts += [p * (1 - 1 / (a * al)) for p in poles]
        else:
            d = self.branch.domain.d
            pts.append(-1j * (al - (d - 1) / 2))
            if al != 0:
                pts += [p * (1 - 1 / al) for p in poles]
            if self.branch.order > 0:
                pts += [0.5 * (p + q) for p, q in zip([0.0] + poles[:-1], poles)]
        pts += poles
        pts = np.array(pts, dtype=complex)
        pts = np.where((pts.real < 0) | ((pts.real == 0) & (pts.imag < 0)), -pts, pts)
        return pts[np.isfinite(pts)]


# ---------------------------------------------------------------------------
# argument principle

def _perimeter_points(region: RegionSpec, s: np.ndarray) -> np.ndarray:
    w, h = region.width, region.height
    z = np.empty(s.shape, complex)
    c = region.corners()
    b1, b2, b3 = w, w + h, 2 * w + h
    m0 = s < b1
    m1 = (s >= b1) & (s < b2)
    m2 = (s >= b2) & (s < b3)
    m3 = s >= b3
    z[m0] = c[0] + s[m0]
    z[m1] = c[1] + 1j * (s[m1] - b1)
    z[m2] = c[2] - (s[m2] - b2)
    z[m3] = c[3] - 1j * (s[m3] - b3)
    return z


def _initial_nodes(region: RegionSpec, spacing: float) -> np.ndarray:
    w, h = region.width, region.height
    edges = [w, h, w, h]
    nodes = []
    start = 0.0
    for e in edges:
        n = max(8, int(math.ceil(e / spacing)))
        nodes.append(start + e * np.arange(n) / n)
        start += e
    return np.concatenate(nodes)


def _winding_once(f: SecularFunction, region: RegionSpec, spacing=None):
    P = 2 * (region.width + region.height)
    if spacing is None:
        spacing = min(0.25 / f.phase_rate(), P / 64)
    s = _initial_nodes(region, spacing)
    v = f(_perimeter_points(region, s))
    med = np.median(np.abs(v))
    if not np.all(np.isfinite(v)):
        raise NonConvergence("non-finite secular value on the boundary")
    while True:
        if np.any(np.abs(v) <= 1e-13 * med):
            raise BoundaryZero("secular function vanishes on the region boundary")
        vv = np.append(v, v[0])
        dth = np.angle(vv[1:] / vv[:-1])
        bad = np.nonzero(np.abs(dth) >= 0.5 * np.pi)[0]
        if bad.size == 0:
            total = dth.sum() / (2 * np.pi)
            k = int(round(total))
            if abs(total - k) > 1e-3:
                raise NonConvergence("winding sum not close to an integer")
            return k, s.size
        ss = np.append(s, P)
        seg = ss[bad + 1] - ss[bad]
        zmid = _perimeter_points(region, ss[bad] + 0.5 * seg)
        if np.any(seg < 1e-15 * (1 + np.abs(zmid))):
            raise BoundaryZero("argument jump unresolved at machine resolution")
        snew = ss[bad] + 0.5 * seg
        vnew = f(zmid)
        if s.size + snew.size > MAX_SAMPLES:
            raise NonConvergence("winding refinement exceeded 2**20 samples")
        s = np.concatenate([s, snew])
        v = np.concatenate([v, vnew])
        order = np.argsort(s, kind="stable")
        s, v = s[order], v[order]


def winding_count(f: SecularFunction, region: RegionSpec, retries: int = 3) -> int:
    """Number of zeros of ``f`` in ``region`` counted with multiplicity.

    If ``f`` vanishes (numerically) on the boundary, the region is dilated by
    ``1e-6`` and the count retried up to ``retries`` times.
    """
    reg = region
    for attempt in range(retries + 1):
        try:
            return _winding_once(f, reg)[0]
        except BoundaryZero:
            if attempt == retries:
                raise
            reg = reg.dilated(1e-6)
    raise AssertionError("unreachable")


def secular_scale(f: SecularFunction, region: RegionSpec) -> float:
    """Median of ``|f|`` over 64 boundary samples."""
    P = 2 * (region.width + region.height)
    s = (np.arange(64) + 0.5) * P / 64
    return float(np.median(np.abs(f(_perimeter_points(region, s)))))


# ---------------------------------------------------------------------------
# Newton

def newton_polish(f: SecularFunction, z0: complex, maxiter: int = 60,
                  max_step: float | None = None):
    """Newton's method on ``f`` from ``z0``; returns ``(z, iterations)``.

    Steps are taken in ``z`` except very near the origin, where the double
    structure of an even function makes Newton in ``lam = z^2`` preferable.
    """
    z = complex(z0)
    last = np.inf
    for it in range(1, maxiter + 1):
        G, Gl, _ = f.derivatives(z)
        G, Gl = complex(G[0]), complex(Gl[0])
        if G == 0:
            return z, it
        if Gl == 0 or not np.isfinite(Gl):
            return z, -it
        if abs(z) < 1e-4:
            lam = z * z - G / Gl
            zn = principal_sqrt(lam)
            if z.real < 0 or (z.real == 0 and z.imag < 0):
                zn = -zn
            step = zn - z
        else:
            step = -G / (2 * z * Gl)
        if max_step is not None and abs(step) > max_step:
            step *= max_step / abs(step)
        z = z + step
        a = abs(step)
        if a <= 4e-16 * (1 + abs(z)):
            return z, it
        if a >= last and a <= 1e-10 * (1 + abs(z)):
            return z, it
        last = a
    return z, maxiter


# ---------------------------------------------------------------------------
# certified search

@dataclass(frozen=True)
class RootInfo:
    z: complex
    multiplicity: int
    residual: float
    newton_iters: int


@dataclass
class RootCertificate:
    region: RegionSpec
    winding: int
    roots: list = field(default_factory=list)
    scale: float = 1.0

    @property
    def count(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def certified(self) -> bool:
        return self.count == self.winding

    def zs(self) -> np.ndarray:
        return np.array([r.z for r in self.roots], dtype=complex)


def _merge(found, tol_rel=MERGE_RTOL):
    out = []
    for item in found:
        z = item[0]
        if any(abs(z - o[0]) <= tol_rel * (1 + abs(z)) for o in out):
            continue
        out.append(item)
    return out


def find_roots(f: SecularFunction, region: RegionSpec, seeds=None,
               max_cell_winding: int = 3) -> RootCertificate:
    """Certified zeros of ``f`` in ``region``.

    The region is bisected until every cell has winding number at most
    ``max_cell_winding``; Newton's method is started from the cell centroid,
    four interior points and any seeds in the cell.  A cell is accepted when
    the roots found inside it account for its winding number.  Roots closer
    than ``1e-7 (1 + |z|)`` are reported once with the cell's multiplicity.
    """
    scale = secular_scale(f, region)
    total = winding_count(f, region)
    cert = RootCertificate(region, total, scale=scale)
    if total == 0:
        return cert
    seeds = np.asarray([] if seeds is None else seeds, dtype=complex)
    zero_mult = 0
    if abs(f.value_at_zero()) <= 1e-14 * max(1.0, scale):
        _, Gl, _ = f.derivatives(0.0)
        zero_mult = 4 if abs(Gl[0]) <= 1e-12 * max(1.0, scale) else 2

    results = []
    stack = [(region, total, 0)]
    while stack:
        cell, w, depth = stack.pop()
        if w == 0:
            continue
        if w <= max_cell_winding:
            found = _cell_newton(f, cell, seeds, scale, zero_mult)
            mult = sum(m for _, m, _, _ in found)
            if mult == w:
                results.extend(found)
                continue
            tiny = cell.diameter < MERGE_RTOL * (1 + abs(cell.center))
            if tiny and found:
                zc, _, res, it = min(found, key=lambda r: abs(r[0] - cell.center))
                results.append((zc, w, res, it))
                continue
        if cell.diameter < 1e-10:
            raise UnresolvedCluster(f"winding {w} persists in cell {cell}")
        children = _split_counted(f, cell, w)
        stack.extend((c, cw, depth + 1) for c, cw in reversed(children))
    results.sort(key=lambda r: (r[0].real, r[0].imag))
    cert.roots = [RootInfo(complex(z), int(m), float(res), int(it)) for z, m, res, it in results]
    return cert


def _split_counted(f, cell, w):
    for frac in (0.5, 0.5 + 0.0371, 0.5 - 0.0523, 0.5 + 0.1107):
        kids = cell.split(frac)
        try:
            counts = [_winding_once(f, k)[0] for k in kids]
        except BoundaryZero:
            continue
        if sum(counts) == w:
            return list(zip(kids, counts))
        # refine once with a denser initial sampling before giving up on this split
        try:
            counts = [_winding_once(f, k, spacing=0.05 / f.phase_rate())[0] for k in kids]
        except BoundaryZero:
            continue
        if sum(counts) == w:
            return list(zip(kids, counts))
    raise NonConvergence(f"inconsistent winding numbers when splitting {cell}")


def _cell_newton(f, cell, seeds, scale, zero_mult):
    found = []
    if zero_mult and cell.contains(0.0):
        found.append((0j, zero_mult, float(abs(f.value_at_zero())), 0))
    c = cell.center
    starts = [c]
    starts += [c + complex(sx * cell.width, sy * cell.height)
               for sx in (-0.25, 0.25) for sy in (-0.25, 0.25)]
    if seeds.size:
        starts += list(seeds[cell.contains(seeds)])
    for z0 in starts:
        z, it = newton_polish(f, z0, max_step=cell.diameter)
        if it < 0 or not cell.contains(z):
            continue
        if zero_mult and abs(z) <= MERGE_RTOL:
            continue
        res = float(abs(f(z)[0]))
        if res > RESIDUAL_RTOL * scale:
            continue
        found.append((z, 1, res, it))
    return _merge(found)
