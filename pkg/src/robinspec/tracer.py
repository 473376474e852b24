"""
Continuation of eigencurves ``lam(alpha)`` and asymptotic regime checks.

Along a branch the curve satisfies ``G(lam, alpha) = 0`` and

    dlam/dalpha = -G_alpha / G_lam,

which on the interval equals the quotient ``int_{bdry} psi^2 / int psi^2``
of the eigenfunction, e.g. ``2 cos^2(za) / (a + sin(2za)/(2z))`` for the
even branch.  Curves are followed with an Euler predictor and a Newton
corrector in ``z``; ``z`` is kept continuous so the branch cut of the square
root is never crossed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (Ball, CurveEvent, CurveTrace, DegenerateDerivative, Hyperrectangle,
                   Interval, NonConvergence, RegimeViolation, RegionSpec, RobinError,
                   Sector, StallNoProgress, principal_sqrt)
from .dtn import DtnBranch, dtn_alpha_z, dtn_pole_z
from .secular import SecularFunction, find_roots, winding_count
from .spectrum import robin_spectrum
from .specfun import bessel_zero

__all__ = ["StepControl", "eigencurve_derivative", "closed_form_derivative",
           "correct_eigenvalue", "trace_curve", "classify_trace",
           "validate_asymptotics", "AsymptoticsReport", "strip_experiment",
           "StripReport", "interval_divergent_offset", "DerivativeMismatch",
           "as_branch"]


class DerivativeMismatch(RobinError):
    pass


def as_branch(domain, branch) -> DtnBranch:
    if isinstance(branch, DtnBranch):
        return branch
    return DtnBranch(domain, branch)


def _lam_z(lam):
    return principal_sqrt(complex(lam))


# ---------------------------------------------------------------------------
# derivative

def _relative_residual(f, z):
    G, Gl, Ga = (complex(v[0]) for v in f.derivatives(z))
    lam = z * z
    den = abs(Gl) * (1 + abs(lam)) + abs(Ga) * (1 + abs(f.alpha))
    return abs(G) / den if den > 0 else abs(G)


def closed_form_derivative(a: float, parity: str, lam) -> complex:
    """Interval eigenfunction quotient ``int_{bdry} psi^2 / int psi^2``.

    Numerator and denominator are both scaled by ``e^{-2a|Im z|}``; for small
    ``|za|`` the odd branch uses a series to resolve the ``0/0`` limit ``3/a``.
    """
    z = _lam_z(lam)
    w = z * a
    p = math.exp(-abs(w.imag))
    e1 = np.exp(1j * w - abs(w.imag))
    e2 = np.exp(-1j * w - abs(w.imag))
    c = 0.5 * (e1 + e2)
    s = -0.5j * (e1 - e2)
    if abs(w) < 0.5:
        sinc_w = sum((-1) ** k * w ** (2 * k) / math.factorial(2 * k + 1) for k in range(12))
        if parity == "even":
            sinc_2w = sum((-1) ** k * (2 * w) ** (2 * k) / math.factorial(2 * k + 1) for k in range(14))
            return complex(2 * c * c / (a * p * p * (1 + sinc_2w)))
        # U(x) = (1 - sinc x)/x^2 = sum_{k>=0} (-1)^k x^{2k}/(2k+3)!
        x2 = (2 * w) ** 2
        U = sum((-1) ** k * x2 ** k / math.factorial(2 * k + 3) for k in range(14))
        return complex(sinc_w ** 2 / (2 * a * U))
    if parity == "even":
        return complex(2 * c * c / (a * p * p + s * c / z))
    return complex(2 * s * s / (a * p * p - s * c / z))


def eigencurve_derivative(domain, branch, alpha, lam, check: bool = True) -> complex:
    """``dlam/dalpha`` by implicit differentiation of the secular function.

    On the interval the result is cross-checked against the eigenfunction
    quotient (:func:`closed_form_derivative`) and a mismatch beyond ``1e-6``
    relative raises :class:`DerivativeMismatch`.

    Raises
    ------
    DegenerateDerivative
        If ``|dG/dlam| < 1e-12`` relative to ``|dG/dalpha|`` (crossing).
    ValueError
        If ``(alpha, lam)`` is not on the branch to ``1e-8``.
    """
    br = as_branch(domain, branch)
    f = SecularFunction(br, alpha)
    z = _lam_z(lam)
    if check and _relative_residual(f, z) > 1e-8:
        raise ValueError("(alpha, lambda) does not satisfy the secular equation")
    _, Gl, Ga = (complex(v[0]) for v in f.derivatives(z))
    if abs(Gl) < 1e-12 * max(abs(Ga), 1e-300):
        raise DegenerateDerivative("dG/dlambda vanishes: eigencurve crossing")
    d1 = -Ga / Gl
    if br.is_interval and check:
        d2 = closed_form_derivative(br.domain.a, br.selector, lam)
        if abs(d1 - d2) > 1e-6 * max(abs(d1), 1e-300):
            raise DerivativeMismatch(f"implicit {d1} vs closed form {d2}")
    return complex(d1)


def _implicit_derivative(f, z):
    _, Gl, Ga = (complex(v[0]) for v in f.derivatives(z))
    if abs(Gl) < 1e-12 * max(abs(Ga), 1e-300):
        raise DegenerateDerivative("dG/dlambda vanishes: eigencurve crossing")
    return -Ga / Gl


def _corrector(f, z, maxiter=8, tol=1e-13):
    """Newton in ``z`` (in ``lam`` near the origin); returns ``(z, iterations)`` or ``None``."""
    for it in range(1, maxiter + 1):
        G, Gl, _ = (complex(v[0]) for v in f.derivatives(z))
        if Gl == 0 or not math.isfinite(abs(Gl)):
            return None
        if abs(z) < 1e-3:
            lam = z * z - G / Gl
            zn = principal_sqrt(lam)
            if abs(-zn - z) < abs(zn - z):
                zn = -zn
        else:
            zn = z - G / (2 * z * Gl)
        step = abs(zn - z)
        z = zn
        if step <= tol * (1 + abs(z)):
            return z, it
    return None


def correct_eigenvalue(domain, branch, alpha, lam_guess, maxiter: int = 50) -> complex:
    """Newton-correct ``lam_guess`` onto the branch's eigenvalue at ``alpha``."""
    f = SecularFunction(as_branch(domain, branch), alpha)
    out = _corrector(f, _lam_z(lam_guess), maxiter=maxiter)
    if out is None:
        raise NonConvergence("Newton corrector did not converge")
    z = out[0]
    return complex(z * z)


# ---------------------------------------------------------------------------
# continuation

@dataclass
class StepControl:
    """Step-size policy of :func:`trace_curve`.

    ``step_cap`` bounds ``|dlam|`` per step as ``cap_factor (1 + |lam|)``.
    Steps grow by ``grow`` after easy corrections up to
    ``max_rel_step (1 + |alpha|)``.
    """
    initial_step: float = 1e-2
    max_rel_step: float = 0.25
    cap_factor: float = 0.5
    grow: float = 2.0
    min_step_rel: float = 1e-12
    max_iters: int = 8
    deflection_rel: float = 1e-4
    max_deflections: int = 20
    max_steps: int = 200000
    dirichlet_alpha_min: float = 100.0
    divergence_slope_tol: float = 0.1


def _path_geometry(path):
    pts = np.asarray(path, dtype=complex)
    seg = np.abs(np.diff(pts))
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    return pts, cum


def trace_curve(domain, branch, path, lambda0, step_control: StepControl | None = None,
                classify: bool = True) -> CurveTrace:
    """Follow the eigencurve through ``(path[0], lambda0)`` along a polyline in ``alpha``.

    Parameters
    ----------
    domain : Interval or Ball
    branch : DtnBranch, or a selector (``"even"``, ``"odd"``, or ``l``)
    path : sequence of complex
        Waypoints in the ``alpha``-plane; at least two.
    lambda0 : complex
        Eigenvalue at ``path[0]``; it is Newton-polished first.

    Returns
    -------
    CurveTrace
        Samples at accepted steps with ``t`` the arc-length fraction, plus
        events ``CrossingProximity``, ``DirichletConvergence`` and
        ``Divergence``.
    """
    sc = step_control or StepControl()
    br = as_branch(domain, branch)
    pts, cum = _path_geometry(path)
    if pts.size < 2 or cum[-1] == 0:
        raise ValueError("path needs at least two distinct waypoints")
    L = cum[-1]
    scale = max(L, np.max(np.abs(pts)), 1.0)

    f = SecularFunction(br, pts[0])
    first = _corrector(f, _lam_z(lambda0), maxiter=50)
    if (first is None or _relative_residual(f, first[0]) > 1e-8
            or abs(first[0] ** 2 - lambda0) > 1e-6 * (1 + abs(lambda0))):
        raise ValueError("lambda0 is not an eigenvalue of the branch at path[0]")
    z = first[0]
    alpha = pts[0]
    ts, als, lams, dls = [0.0], [alpha], [z * z], [_implicit_derivative(f, z)]
    events = []

    seg = 0
    seg_start, seg_t0 = pts[0], 0.0
    ds = sc.initial_step * scale if sc.initial_step * scale < L else 0.1 * L
    deflections = 0
    nsteps = 0
    while seg < pts.size - 1:
        target = pts[seg + 1]
        t_end = cum[seg + 1] / L
        remaining = abs(target - alpha)
        if remaining <= 1e-14 * scale:
            seg += 1
            seg_start, seg_t0 = alpha, ts[-1]
            continue
        nsteps += 1
        if nsteps > sc.max_steps:
            raise StallNoProgress("step budget exhausted")
        direction = (target - alpha) / remaining
        h = min(ds, remaining, sc.max_rel_step * (1 + abs(alpha)))
        new_alpha = target if h >= remaining else alpha + h * direction
        dalpha = new_alpha - alpha
        ok = False
        try:
            lp = _implicit_derivative(SecularFunction(br, alpha), z)
            lam_old = z * z
            lam_pred = lam_old + lp * dalpha
            zp = principal_sqrt(lam_pred)
            if abs(-zp - z) < abs(zp - z):
                zp = -zp
            fn = SecularFunction(br, new_alpha)
            out = _corrector(fn, zp, maxiter=sc.max_iters)
            if out is not None:
                zn, iters = out
                lam_new = zn * zn
                dl = abs(lam_new - lam_old)
                drift = abs(lam_new - lam_pred)
                if (dl <= sc.cap_factor * (1 + abs(lam_old))
                        and drift <= 0.3 * abs(lam_pred - lam_old) + 1e-9 * (1 + abs(lam_new))):
                    dnew = _implicit_derivative(fn, zn)
                    ok = True
        except DegenerateDerivative:
            ok = False
        if ok:
            alpha, z = new_alpha, zn
            seg_len = abs(target - seg_start)
            frac = 1 - abs(target - alpha) / seg_len if seg_len > 0 else 1.0
            t = seg_t0 + (t_end - seg_t0) * frac
            t = max(t, ts[-1] + 1e-15)
            ts.append(min(t, 1.0) if seg == pts.size - 2 and new_alpha == target else t)
            als.append(alpha)
            lams.append(lam_new)
            dls.append(dnew)
            if iters <= 3:
                ds = min(h * sc.grow, sc.max_rel_step * (1 + abs(alpha)))
            else:
                ds = h
            continue
        ds = 0.5 * h
        if ds < sc.min_step_rel * scale * 1e4 or ds < 1e-9 * (1 + abs(alpha)):
            # crossing proximity: deflect sideways and carry on towards the waypoint
            if deflections >= sc.max_deflections:
                raise StallNoProgress("continuation stalled near a crossing")
            deflections += 1
            off = 1j * direction * sc.deflection_rel * scale
            fn = SecularFunction(br, alpha + off)
            out = None
            lp = None
            try:
                lp = _implicit_derivative(SecularFunction(br, alpha), z)
            except DegenerateDerivative:
                lp = 0.0
            lam_pred = z * z + lp * off
            zp = principal_sqrt(lam_pred)
            if abs(-zp - z) < abs(zp - z):
                zp = -zp
            out = _corrector(fn, zp, maxiter=50)
            if out is None:
                raise StallNoProgress("deflection step failed")
            alpha = alpha + off
            z = out[0]
            events.append(CurveEvent(ts[-1], "CrossingProximity", complex(alpha)))
            t = ts[-1] + 1e-12
            ts.append(t)
            als.append(alpha)
            lams.append(z * z)
            dls.append(_implicit_derivative(fn, z))
            seg_start, seg_t0 = alpha, t
            ds = sc.deflection_rel * scale
    als, lams, dls = (np.array(v, complex) for v in (als, lams, dls))
    # real alpha is self-adjoint: lambda and its derivative are real up to rounding
    real = (als.imag == 0) & (np.abs(lams.imag) <= 1e-9 * (1 + np.abs(lams)))
    lams[real] = lams[real].real
    dls[real] = dls[real].real
    trace = CurveTrace(path=[(float(c / L), complex(p)) for c, p in zip(cum, pts)],
                       t=np.array(ts), alpha=als, lam=lams, dlam=dls, events=events)
    if classify:
        classify_trace(br, trace, sc)
    return trace


def classify_trace(branch: DtnBranch, trace: CurveTrace, sc: StepControl | None = None):
    """Attach the terminal ``DirichletConvergence`` or ``Divergence`` event."""
    sc = sc or StepControl()
    al = trace.alpha
    lam = trace.lam
    aend = abs(al[-1])
    # divergence: log-log slope over the final decade of |alpha|, with a 1/|alpha|
    # regressor absorbing the first correction (e.g. the (d-1) alpha term on the ball)
    sel = np.abs(al) >= aend / 10
    covered = aend > 0 and np.min(np.abs(al)) <= aend / 10 * (1 + 1e-9)
    if covered and np.count_nonzero(sel) >= 4:
        x = np.log(np.abs(al[sel]))
        y = np.log(np.maximum(np.abs(lam[sel]), 1e-300))
        X = np.column_stack([x, np.ones_like(x), 1.0 / np.abs(al[sel])])
        slope = np.linalg.lstsq(X, y, rcond=None)[0][0]
        if abs(slope - 2) <= sc.divergence_slope_tol:
            A = -al[sel] ** 2
            C = complex(np.vdot(A, lam[sel]) / np.vdot(A, A))
            trace.events.append(CurveEvent(float(trace.t[-1]), "Divergence", C))
            return trace
    if aend >= sc.dirichlet_alpha_min:
        zf = principal_sqrt(lam[-1])
        poles = dtn_pole_z(branch, abs(zf) + 5)
        if poles:
            lamD = min((p * p for p in poles), key=lambda v: abs(v - lam[-1]))
            a_eff = branch.domain.a if branch.is_interval else 1.0
            tol = 4 * lamD / (a_eff * aend) + 1e-9
            if abs(lam[-1] - lamD) <= tol:
                trace.events.append(CurveEvent(float(trace.t[-1]), "DirichletConvergence", lamD))
    return trace


# ---------------------------------------------------------------------------
# asymptotic regimes

@dataclass
class AsymptoticsReport:
    regime: str
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)     # (name, measured, threshold, passed)

    @property
    def passed(self) -> bool:
        return all(c[3] for c in self.checks)

    def add(self, name, measured, threshold, passed):
        self.checks.append((name, float(measured), float(threshold), bool(passed)))


def interval_divergent_offset(a: float, alpha, parity: str, maxiter: int = 200):
    """Divergent interval eigenvalue written as ``z = -i alpha + delta``.

    Solves ``z = -i alpha (1 + q)/(1 - q)`` (even) or
    ``z = -i alpha (1 - q)/(1 + q)`` (odd), ``q = e^{2iza}``, by fixed-point
    iteration and returns ``(z, lam + alpha^2)`` with the offset
    ``lam + alpha^2 = -2 i alpha delta + delta^2`` free of cancellation.
    """
    alpha = complex(alpha)
    z0 = -1j * alpha
    if z0.imag <= 0:
        raise RegimeViolation("divergent interval branch needs Re alpha < 0")
    z = z0
    sgn = 1 if parity == "even" else -1
    for _ in range(maxiter):
        q = np.exp(2j * z * a)
        zn = z0 * (1 + sgn * q) / (1 - sgn * q)
        if abs(zn - z) <= 1e-16 * abs(z):
            z = zn
            break
        z = zn
    else:
        raise NonConvergence("offset iteration did not converge")
    q = np.exp(2j * z * a)
    delta = z0 * 2 * sgn * q / (1 - sgn * q)
    z = z0 + delta
    return complex(z), complex(2 * z0 * delta + delta * delta)


def _certified_local_root(f, seed, radius):
    """Newton from ``seed`` confirmed by a winding count of 1 in a small box."""
    from .secular import newton_polish
    z, _ = newton_polish(f, seed)
    r = radius
    for _ in range(6):
        box = RegionSpec(z.real - r, z.real + r, z.imag - r, z.imag + r)
        try:
            w = winding_count(f, box)
        except RobinError:
            w = -1
        if w == 1:
            return z, True
        r *= 0.5
    return z, False


def _check_sector_minus(alphas):
    for al in alphas:
        if not complex(al).real < 0:
            raise RegimeViolation(f"alpha = {al} is not in a sector T_phi^- (needs Re alpha < 0)")


def validate_asymptotics(domain, regime: str, alphas, **params) -> AsymptoticsReport:
    """Residual tables for the asymptotic regimes.

    ``regime`` is one of ``IntervalDivergent``, ``IntervalConvergent``,
    ``BallConvergentRate``, ``BallDivergent``, ``HyperrectangleFamilies``.
    Regime-specific keyword parameters: ``n_curves`` (IntervalConvergent),
    ``l``, ``p`` (ball regimes), ``tol`` thresholds.
    """
    alphas = [complex(a) for a in alphas]
    rep = AsymptoticsReport(regime)
    if regime == "IntervalDivergent":
        _interval_divergent(domain, alphas, rep, **params)
    elif regime == "IntervalConvergent":
        _interval_convergent(domain, alphas, rep, **params)
    elif regime == "BallConvergentRate":
        _ball_rate(domain, alphas, rep, **params)
    elif regime == "BallDivergent":
        _ball_divergent(domain, alphas, rep, **params)
    elif regime == "HyperrectangleFamilies":
        _rect_families(domain, alphas, rep, **params)
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return rep


def _interval_divergent(dom, alphas, rep, sector=0.2, ratio_max=10.0):
    if not isinstance(dom, Interval):
        raise TypeError("IntervalDivergent needs an interval")
    _check_sector_minus(alphas)
    a = dom.a
    T = Sector("T_plus", sector)
    rs = {"even": [], "odd": []}
    counts_ok = True
    for al in alphas:
        spec = robin_spectrum(dom, al, abs(al) + 2.0)
        outside = [r for r in spec if not T.contains(r.lam)]
        n_out = sum(r.multiplicity for r in outside)
        cert = all(r.certified for r in outside)
        row = {"alpha": al, "n_outside": n_out, "certified": cert}
        for par in ("even", "odd"):
            z, off = interval_divergent_offset(a, al, par)
            lam = z * z
            # the certified spectrum must contain this eigenvalue
            match = min((abs(r.lam - lam) for r in outside), default=np.inf)
            row[f"match_{par}"] = match / abs(lam)
            r = abs(off) / (abs(al) ** 2 * math.exp(2 * a * al.real))
            row[f"r_{par}"] = r
            rs[par].append(r)
            counts_ok &= match <= 1e-9 * abs(lam)
        counts_ok &= (n_out == 2) and cert
        rep.rows.append(row)
    rep.add("exactly two certified eigenvalues outside T_0.2+", min(r["n_outside"] for r in rep.rows),
            2, counts_ok)
    for par in ("even", "odd"):
        v = np.array(rs[par])
        ratio = v.max() / v.min()
        rep.add(f"r(alpha) max/min ratio ({par})", ratio, ratio_max, ratio <= ratio_max)


def _interval_convergent(dom, alphas, rep, n_curves=6, tol=1e-3, step_control=None):
    if not isinstance(dom, Interval):
        raise TypeError("IntervalConvergent needs an interval")
    a = dom.a
    worst = 0.0
    for al in alphas:
        for k in range(n_curves):
            par = "even" if k % 2 == 0 else "odd"
            lam0 = (k * math.pi / (2 * a)) ** 2
            tr = trace_curve(dom, par, [0.0, al], lam0, step_control)
            ev = tr.event("Divergence")
            lam_end = tr.final
            row = {"alpha": al, "start": lam0, "branch": par, "end": lam_end,
                   "crossings": sum(e.kind == "CrossingProximity" for e in tr.events)}
            if ev is not None:
                row["class"] = "divergent"
                row["C"] = ev.value
            else:
                j = max(1, round(2 * a * math.sqrt(max(lam_end.real, 0.0)) / math.pi))
                cands = [(jj * math.pi / (2 * a)) ** 2 for jj in (j - 1, j, j + 1) if jj >= 1]
                lamD = min(cands, key=lambda v: abs(v - lam_end))
                dist = abs(lam_end - lamD)
                row.update({"class": "bounded", "target": lamD, "distance": dist,
                            "rate": complex(al * (lam_end - lamD)), "rate_expected": -2 * lamD / a})
                worst = max(worst, dist)
            rep.rows.append(row)
    rep.add("max distance of bounded endpoints to Dirichlet values", worst, tol, worst <= tol)


def _ball_j(dom, l, p):
    return bessel_zero(dom.d / 2 + l - 1, p)


def _ball_rate(dom, alphas, rep, l=0, p=1, tol_rel=0.01):
    if not isinstance(dom, Ball):
        raise TypeError("BallConvergentRate needs a ball")
    j = _ball_j(dom, l, p)
    f_branch = DtnBranch(dom, l)
    worst = 0.0
    cert_all = True
    for al in alphas:
        f = SecularFunction(f_branch, al)
        z, cert = _certified_local_root(f, j * (1 - 1 / al), radius=0.5 * abs(j / al) + 1e-6)
        lam = z * z
        s = al * (lam - j * j) + 2 * j * j
        rep.rows.append({"alpha": al, "lambda": lam, "s": s, "abs_s_over_j2": abs(s) / j ** 2,
                         "certified": cert})
        worst = max(worst, abs(s))
        cert_all &= cert
    rep.add("max |alpha (lambda - j^2) + 2 j^2| / j^2", worst / j ** 2, tol_rel,
            worst <= tol_rel * j ** 2 and cert_all)


def _ball_divergent(dom, alphas, rep, l=0, bound=10.0):
    if not isinstance(dom, Ball):
        raise TypeError("BallDivergent needs a ball")
    _check_sector_minus(alphas)
    d = dom.d
    br = DtnBranch(dom, l)
    worst = 0.0
    cert_all = True
    for al in alphas:
        f = SecularFunction(br, al)
        z, cert = _certified_local_root(f, -1j * (al - (d - 1) / 2), radius=0.5)
        lam = z * z
        b = lam + al * al - (d - 1) * al
        rep.rows.append({"alpha": al, "lambda": lam, "b": b, "certified": cert})
        worst = max(worst, abs(b))
        cert_all &= cert
    rep.add("max |lambda + alpha^2 - (d-1) alpha|", worst, bound, worst <= bound and cert_all)


def _rect_families(dom, alphas, rep, tol_rel=0.05):
    if not isinstance(dom, Hyperrectangle):
        raise TypeError("HyperrectangleFamilies needs a hyperrectangle")
    _check_sector_minus(alphas)
    d = dom.dim
    ok = True
    for al in alphas:
        spec = robin_spectrum(dom, al, 1.1 * abs(al) + 1.0)
        C = np.array([r.lam / (-al * al) for r in spec])
        mult = np.array([r.multiplicity for r in spec])
        row = {"alpha": al}
        for jf in range(1, d + 1):
            near = np.abs(C - jf) <= tol_rel * jf
            row[f"count_C{jf}"] = int(mult[near].sum())
            if np.any(near):
                best = C[near][np.argmin(np.abs(C[near] - jf))]
                row[f"C{jf}"] = complex(best)
            ok &= bool(np.any(near))
        ok &= row[f"count_C{d}"] == 2 ** d
        ok &= all(r.certified for r in spec)
        rep.rows.append(row)
    rep.add(f"families C = 1..{d} present and exactly 2^{d} sums at C = {d}",
            min(r[f"count_C{d}"] for r in rep.rows), 2 ** d, ok)


# ---------------------------------------------------------------------------
# strip experiment

@dataclass
class StripReport:
    x: np.ndarray
    alpha_even: np.ndarray
    alpha_odd: np.ndarray

    @staticmethod
    def _sign_changes(v):
        s = np.sign(v.real)
        s = s[s != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))

    def max_abs_im(self, parity="even") -> float:
        v = self.alpha_even if parity == "even" else self.alpha_odd
        return float(np.max(np.abs(v.imag)))

    def sign_changes(self, parity="even") -> int:
        v = self.alpha_even if parity == "even" else self.alpha_odd
        return self._sign_changes(v)


def strip_experiment(a: float, x_max: float, strip_height: float, x_min: float = 1.0,
                     samples_per_unit: int = 400) -> StripReport:
    """DtN eigenvalues along ``lam = (x + i c/x)^2`` with ``Im lam = 2c = strip_height``."""
    if not strip_height > 0:
        raise ValueError("strip_height must be positive")
    c = 0.5 * strip_height
    n = int(math.ceil((x_max - x_min) * samples_per_unit)) + 1
    x = np.linspace(x_min, x_max, n)
    z = x + 1j * c / x
    dom = Interval(a)
    ev, od = DtnBranch(dom, "even"), DtnBranch(dom, "odd")
    ae = np.array([dtn_alpha_z(ev, zz) for zz in z])
    ao = np.array([dtn_alpha_z(od, zz) for zz in z])
    return StripReport(x, ae, ao)
