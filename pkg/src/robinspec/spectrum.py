"""
Robin spectra of the model domains and the Robin/DtN duality.

``lam`` is a Robin eigenvalue for ``alpha`` exactly when ``alpha`` is an
eigenvalue of the DtN operator ``M(lam)``.  The interval and ball spectra are
assembled branch by branch from certified secular roots; the hyperrectangle
spectrum is the set of sums of per-edge interval eigenvalues.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import (Ball, EigenvalueRecord, Hyperrectangle, Interval, PoleProximity,
                   RegionSpec, principal_sqrt)
from .dtn import DtnBranch, ball_multiplicity, dtn_alpha, dtn_pole_z
from .secular import SecularFunction, find_roots

__all__ = ["robin_spectrum", "branch_roots", "duality_check", "duality_roundtrip",
           "accumulation_experiment", "ball_l_max", "worker_count"]

INTERVAL_MERGE_RTOL = 1e-13
RECT_MERGE_RTOL = 1e-9


def worker_count(n_tasks: int) -> int:
    """Thread count for ``n_tasks`` jobs, capped by ``ROBIN_SPEC_THREADS``."""
    cap = os.environ.get("ROBIN_SPEC_THREADS")
    try:
        cap = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        cap = 1
    return max(1, min(cap, n_tasks))


def _map(fn, items):
    items = list(items)
    nw = worker_count(len(items))
    if nw == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=nw) as ex:
        return list(ex.map(fn, items))


def _canonical(z, tol=1e-9):
    """Whether ``z`` is the representative of ``{z, -z}`` kept for ``lam = z^2``."""
    eps = tol * (1 + abs(z))
    return z.real > eps or (abs(z.real) <= eps and z.imag >= -eps * 0)


def branch_roots(branch: DtnBranch, alpha, z_max: float, pad: float = 0.5):
    """Certified eigenvalues ``lam = z^2`` of one branch with ``|z| <= z_max``.

    Returns a list of ``(lam, multiplicity, residual, certified)``.
    """
    f = SecularFunction(branch, alpha)
    ext = z_max + pad
    region = RegionSpec(-0.1, ext, -ext, ext)
    cert = find_roots(f, region, seeds=f.seeds(ext))
    out = []
    for r in cert.roots:
        z = r.z
        if abs(z) > z_max * (1 + 1e-12) or not _canonical(z):
            continue
        mult = r.multiplicity // 2 if z == 0 else r.multiplicity
        lam = z * z
        if f.alpha.imag == 0.0:
            # real alpha: self-adjoint, the spectrum is real
            lam = complex(lam.real)
        out.append((lam, max(mult, 1), r.residual, cert.certified))
    return out


def ball_l_max(alpha, z_max: float) -> int:
    """Largest angular index searched on the ball: ``l <= |alpha| + z_max + 5``."""
    return int(math.floor(abs(complex(alpha)) + z_max + 5))


def _sort_key(rec):
    return (rec.lam.real, rec.lam.imag)


def _interval_spectrum(dom: Interval, alpha, z_max):
    parts = _map(lambda sel: (sel, branch_roots(DtnBranch(dom, sel), alpha, z_max)),
                 ["even", "odd"])
    recs = [EigenvalueRecord(complex(lam), m, sel, res, cert)
            for sel, roots in parts for lam, m, res, cert in roots]
    recs.sort(key=_sort_key)
    merged = []
    for r in recs:
        for i, o in enumerate(merged):
            if (o.symmetry != r.symmetry and "+" not in str(o.symmetry)
                    and abs(o.lam - r.lam) <= INTERVAL_MERGE_RTOL * (1 + abs(r.lam))):
                merged[i] = EigenvalueRecord(o.lam, o.multiplicity + r.multiplicity, "even+odd",
                                             max(o.residual, r.residual),
                                             o.certified and r.certified)
                break
        else:
            merged.append(r)
    return merged


def _ball_spectrum(dom: Ball, alpha, z_max, l_values=None):
    if l_values is None:
        l_values = range(ball_l_max(alpha, z_max) + 1)
    parts = _map(lambda l: (l, branch_roots(DtnBranch(dom, l), alpha, z_max)), l_values)
    recs = []
    for l, roots in parts:
        M = ball_multiplicity(l, dom.d)
        recs += [EigenvalueRecord(complex(lam), M * m, l, res, cert)
                 for lam, m, res, cert in roots]
    recs.sort(key=_sort_key)
    return recs


def _rect_spectrum(dom: Hyperrectangle, alpha, z_max):
    cache = {}
    per_edge = []
    for a in dom.a:
        if a not in cache:
            cache[a] = _interval_spectrum(Interval(a), alpha, z_max)
        per_edge.append(cache[a])
    sums = []
    for combo in itertools.product(*per_edge):
        lam = sum(r.lam for r in combo)
        mult = math.prod(r.multiplicity for r in combo)
        sym = tuple(r.symmetry for r in combo)
        sums.append(EigenvalueRecord(complex(lam), mult, sym,
                                     max(r.residual for r in combo),
                                     all(r.certified for r in combo)))
    sums.sort(key=_sort_key)
    merged = []
    for r in sums:
        # candidates with equal lam sit next to each other in (Re, Im) order up to
        # the tolerance, so scan back over the tail with close real parts
        hit = None
        tol = RECT_MERGE_RTOL * (1 + abs(r.lam))
        for i in range(len(merged) - 1, -1, -1):
            o = merged[i]
            if r.lam.real - o.lam.real > tol:
                break
            if abs(o.lam - r.lam) <= tol:
                hit = i
                break
        if hit is None:
            merged.append(r)
        else:
            o = merged[hit]
            syms = o.symmetry if isinstance(o.symmetry, list) else [o.symmetry]
            merged[hit] = EigenvalueRecord(o.lam, o.multiplicity + r.multiplicity,
                                           syms + [r.symmetry], max(o.residual, r.residual),
                                           o.certified and r.certified)
    merged.sort(key=_sort_key)
    return merged


def robin_spectrum(domain, alpha, z_max: float, l_values=None) -> list[EigenvalueRecord]:
    """Robin eigenvalues with ``|sqrt(lam)| <= z_max``, sorted by ``(Re, Im)``.

    Parameters
    ----------
    domain : Interval, Ball or Hyperrectangle
    alpha : complex
        Robin parameter in ``du/dn + alpha u = 0``.
    z_max : float
        Window radius in the ``z = sqrt(lam)`` plane.  For hyperrectangles the
        window applies to every per-edge eigenvalue.
    l_values : iterable of int, optional
        Ball only: restrict the angular indices (default ``0..ball_l_max``).
    """
    if not z_max > 0:
        raise ValueError("z_max must be positive")
    alpha = complex(alpha)
    if isinstance(domain, Interval):
        return _interval_spectrum(domain, alpha, z_max)
    if isinstance(domain, Ball):
        return _ball_spectrum(domain, alpha, z_max, l_values)
    if isinstance(domain, Hyperrectangle):
        return _rect_spectrum(domain, alpha, z_max)
    raise TypeError(f"unsupported domain {domain!r}")


def _dirichlet_guard(branches, lam, dist=1e-6):
    z = principal_sqrt(lam)
    zr = z if z.real >= 0 else -z
    for b in branches:
        for p in dtn_pole_z(b, abs(z) + 1.0):
            if abs(zr - p) <= dist:
                raise PoleProximity(f"lambda = {lam} lies on the Dirichlet spectrum")


def duality_check(domain, lam, l_max: int = 4) -> list[complex]:
    """DtN eigenvalues ``alpha`` for which ``lam`` is a Robin eigenvalue.

    Interval: ``[alpha_even, alpha_odd]``.  Ball: ``alpha_l`` for
    ``l = 0..l_max`` (each with multiplicity ``M_l^d``).
    """
    lam = complex(lam)
    if isinstance(domain, Interval):
        branches = [DtnBranch(domain, "even"), DtnBranch(domain, "odd")]
    elif isinstance(domain, Ball):
        branches = [DtnBranch(domain, l) for l in range(l_max + 1)]
    else:
        raise TypeError("duality is implemented for intervals and balls")
    _dirichlet_guard(branches, lam)
    return [complex(dtn_alpha(b, lam)) for b in branches]


def duality_roundtrip(domain, lam, l_max: int = 4) -> list[tuple]:
    """Recompute ``lam`` from each DtN eigenvalue ``alpha`` returned by ``duality_check``.

    Returns ``(selector, alpha, rel_dist)`` per branch, where ``rel_dist`` is
    the relative distance from ``lam`` to the Robin spectrum at ``alpha``
    (the ball spectrum is restricted to the angular index the ``alpha`` came
    from, which is where ``lam`` must reappear).
    """
    lam = complex(lam)
    alphas = duality_check(domain, lam, l_max)
    z_max = abs(principal_sqrt(lam)) + 1.0
    out = []
    if isinstance(domain, Interval):
        sels = ["even", "odd"]
    else:
        sels = list(range(l_max + 1))
    for sel, al in zip(sels, alphas):
        if isinstance(domain, Interval):
            spec = robin_spectrum(domain, al, z_max)
        else:
            spec = robin_spectrum(domain, al, z_max, l_values=[sel])
        dist = min((abs(r.lam - lam) for r in spec), default=math.inf)
        out.append((sel, al, dist / max(abs(lam), 1e-300)))
    return out


def accumulation_experiment(domain, lambda_target, k_max: int) -> list[complex]:
    """First ``k_max`` DtN eigenvalues at ``lambda_target`` ordered by modulus.

    Along this sequence of ``alpha`` the fixed ``lambda_target`` is a Robin
    eigenvalue.  On the ball ``|alpha_l| -> inf`` with ``alpha_l ~ -l``; the
    interval has only two values.
    """
    lam = complex(lambda_target)
    if isinstance(domain, Interval):
        vals = duality_check(domain, lam)
    elif isinstance(domain, Ball):
        # |alpha_l| grows like l once l exceeds |z|, so a few extra indices suffice
        n = k_max + int(abs(principal_sqrt(lam))) + 5
        vals = duality_check(domain, lam, l_max=n)
    else:
        raise TypeError("accumulation is implemented for intervals and balls")
    vals = sorted(vals, key=abs)
    return vals[:k_max]
