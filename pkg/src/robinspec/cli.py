"""
Command-line interface: ``robinspec spectrum | trace | validate``.

Complex literals are written ``a+bi`` or ``a-bi`` without spaces (``3``,
``-2i``, ``1.5e-3-4i`` and ``j`` in place of ``i`` are accepted).  Numbers in
the output carry 17 significant digits.  Exit status: 0 success, 1 bad
arguments, 2 computational failure or a failed validation check.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from .core import Ball, Hyperrectangle, Interval, RobinError
from .dtn import DtnBranch
from .spectrum import branch_roots, duality_roundtrip, robin_spectrum
from .tracer import AsymptoticsReport, strip_experiment, trace_curve, validate_asymptotics
from .verify import (defective_pair_demo, fd_interval, fd_radial_ball, numerical_range_check)

__all__ = ["main", "parse_complex", "format_number", "dumps_json", "SCHEMA_VERSION"]

SCHEMA_VERSION = "spectrum.v1"

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (``j`` accepted for ``i``)."""
    s = text.strip()
    if not s or " " in s:
        raise UsageError(f"bad complex literal {text!r}")
    m = re.fullmatch(rf"({_NUM})([+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]", s)
    if m:
        im = m.group(2)
        return complex(float(m.group(1)), float(im + "1" if im in "+-" else im))
    m = re.fullmatch(rf"({_NUM})", s)
    if m:
        return complex(float(s), 0.0)
    m = re.fullmatch(r"([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]", s)
    if m:
        im = m.group(1)
        return complex(0.0, float(im + "1" if im in ("", "+", "-") else im))
    raise UsageError(f"bad complex literal {text!r}")


def format_number(x) -> str:
    """17 significant digits; non-finite values become ``null`` in JSON."""
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0.0:
        return "0.0"
    out = format(x, ".17g")
    return out if any(c in out for c in ".en") else out + ".0"


def format_complex(z) -> str:
    z = complex(z)
    im = format(abs(z.imag), ".17g")
    return f"{format(z.real, '.17g')}{'-' if z.imag < 0 else '+'}{im}i"


def dumps_json(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats printed by :func:`format_number`."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps_json(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool)
               for v in obj):
            return "[" + ", ".join(dumps_json(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + dumps_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_number(obj)
    if isinstance(obj, complex):
        return dumps_json([obj.real, obj.imag], indent, _level)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


# ---------------------------------------------------------------------------
# argument handling

def _domain(args):
    kind = args.domain
    if kind == "interval":
        a = _floats(args.a or "1")
        if len(a) != 1:
            raise UsageError("--a takes one half-width for the interval")
        return Interval(a[0])
    if kind == "ball":
        return Ball(args.dim)
    if kind == "hyperrectangle":
        return Hyperrectangle(tuple(_floats(args.a or "1,1")))
    raise UsageError(f"unknown domain {kind!r}")


def _floats(text):
    try:
        out = [float(x) for x in str(text).split(",") if x != ""]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None
    if not out:
        raise UsageError("empty number list")
    return out


def _complex_list(text):
    if text is None:
        return []
    parts = [p for p in str(text).split(",") if p != ""]
    return [parse_complex(p) for p in parts]


def _domain_json(dom):
    if isinstance(dom, Interval):
        return {"kind": "interval", "a": dom.a}
    if isinstance(dom, Ball):
        return {"kind": "ball", "d": dom.d, "R": dom.R}
    return {"kind": "hyperrectangle", "a": list(dom.a)}


def _symmetry_json(sym):
    if isinstance(sym, (list, tuple)):
        return [_symmetry_json(s) for s in sym]
    if isinstance(sym, (int, np.integer)):
        return int(sym)
    return str(sym)


# ---------------------------------------------------------------------------
# commands

def cmd_spectrum(args, out) -> int:
    dom = _domain(args)
    alpha = parse_complex(args.alpha)
    if not args.zmax > 0:
        raise UsageError("--zmax must be positive")
    recs = robin_spectrum(dom, alpha, args.zmax)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "domain": _domain_json(dom),
        "alpha": [alpha.real, alpha.imag],
        "z_max": float(args.zmax),
        "eigenvalues": [{"lambda": [r.lam.real, r.lam.imag],
                         "multiplicity": int(r.multiplicity),
                         "symmetry": _symmetry_json(r.symmetry),
                         "residual": float(r.residual),
                         "certified": bool(r.certified)} for r in recs],
    }
    out.write(dumps_json(doc) + "\n")
    return 0


_EVENT_NAMES = {"CrossingProximity": "CROSSING_PROXIMITY",
                "DirichletConvergence": "DIRICHLET_CONVERGENCE",
                "Divergence": "DIVERGENCE"}


def _event_text(ev):
    name = _EVENT_NAMES[ev.kind]
    if ev.kind == "CrossingProximity":
        return name
    v = complex(ev.value)
    val = format_number(v.real) if v.imag == 0 else format_complex(v)
    return f"{name}:{val}"


def _branch(args, dom):
    if isinstance(dom, Interval):
        sel = args.branch or "even"
        if sel not in ("even", "odd"):
            raise UsageError("--branch must be even or odd on the interval")
        return DtnBranch(dom, sel)
    if isinstance(dom, Ball):
        try:
            return DtnBranch(dom, int(args.branch or 0))
        except ValueError:
            raise UsageError("--branch must be an angular index l on the ball") from None
    raise UsageError("trace supports interval and ball")


def cmd_trace(args, out) -> int:
    dom = _domain(args)
    br = _branch(args, dom)
    path = _complex_list(args.path)
    if len(path) < 2:
        raise UsageError("--path needs at least two waypoints")
    if args.lambda0 is not None:
        lam0 = parse_complex(args.lambda0)
    else:
        # lowest eigenvalue of the branch at the first waypoint
        roots = branch_roots(br, path[0], 10.0)
        if not roots:
            raise RobinError("no eigenvalue of the branch with |z| <= 10 at the start")
        lam0 = min((r[0] for r in roots), key=lambda v: (v.real, v.imag))
    tr = trace_curve(dom, br, path, lam0)
    by_row = {}
    for ev in tr.events:
        i = int(np.argmin(np.abs(tr.t - ev.t)))
        by_row.setdefault(i, []).append(_event_text(ev))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "alpha_re", "alpha_im", "lambda_re", "lambda_im",
                "dlambda_re", "dlambda_im", "event"])
    for i in range(len(tr.t)):
        al, lam, dl = tr.alpha[i], tr.lam[i], tr.dlam[i]
        w.writerow([format_number(tr.t[i]), format_number(al.real), format_number(al.imag),
                    format_number(lam.real), format_number(lam.imag),
                    format_number(dl.real), format_number(dl.imag),
                    ";".join(by_row.get(i, []))])
    out.write(buf.getvalue())
    return 0


REGIMES = ("interval-divergent", "interval-convergent", "ball-convergent-rate",
           "ball-divergent", "hyperrectangle-families", "numerical-range", "duality",
           "strip", "defective-pair")


def _rays(r, angles):
    return [r * complex(math.cos(t), math.sin(t)) for t in angles]


def _validate_numerical_range(dom, alphas, rep):
    worst = 0
    for al in alphas:
        if isinstance(dom, Ball):
            ops = [fd_radial_ball(dom.d, l, al, 200) for l in range(3)]
        elif isinstance(dom, Interval):
            ops = [fd_interval(dom.a, al, al, 400)]
        else:
            raise UsageError("numerical-range supports interval and ball")
        for op in ops:
            vals, inside = numerical_range_check(op, 200)
            bad = len(inside) - sum(inside)
            rep.rows.append({"alpha": al, "l": op.scheme.get("l", "-"), "samples": len(vals),
                             "outside": bad, "min_re": min(v.real for v in vals)})
            worst = max(worst, bad)
    rep.add("samples outside the region (5% margin)", worst, 0, worst == 0)


def _validate_duality(dom, rep, n=20, seed=42):
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < n:
        lam = complex(rng.uniform(-5, 20), rng.uniform(-5, 5))
        try:
            res = duality_roundtrip(dom, lam)
        except RobinError:
            continue      # drawn too close to a Dirichlet eigenvalue
        done += 1
        d = max(r[2] for r in res)
        rep.rows.append({"lambda": lam, "max_rel_dist": d})
        worst = max(worst, d)
    rep.add("max relative round-trip distance", worst, 1e-8, worst <= 1e-8)


def _validate_strip(dom, rep):
    a = dom.a if isinstance(dom, Interval) else 1.0
    s = strip_experiment(a, 50.0, 2.0)
    for par in ("even", "odd"):
        mi, sc = s.max_abs_im(par), s.sign_changes(par)
        rep.rows.append({"branch": par, "max_abs_im_alpha": mi, "re_sign_changes": sc})
    rep.add("max |Im alpha| (even)", s.max_abs_im("even"), 25, s.max_abs_im("even") > 25)
    rep.add("Re alpha sign changes (even)", s.sign_changes("even"), 10,
            s.sign_changes("even") >= 10)


def _validate_defective(dom, rep):
    a = dom.a if isinstance(dom, Interval) else 1.0
    r = defective_pair_demo(a)
    for dt, g in zip(r.offsets, r.gaps):
        rep.rows.append({"offset": dt, "gap": g})
    rep.add("gap exponent in t", r.exponent, 0.5, abs(r.exponent - 0.5) <= 0.1)
    rep.add("split exponent under perturbation at the discrete crossing",
            r.perturbation_exponent, 0.5, abs(r.perturbation_exponent - 0.5) <= 0.1)


def run_validate(regime, dom, alphas=None) -> AsymptoticsReport:
    """Run one named validation and return its report."""
    if regime == "interval-divergent":
        return validate_asymptotics(dom, "IntervalDivergent", alphas or [-5, -10, -15, -20])
    if regime == "interval-convergent":
        return validate_asymptotics(dom, "IntervalConvergent",
                                    alphas or _rays(1e3, [0, math.pi / 8, 7 * math.pi / 8]))
    if regime == "ball-convergent-rate":
        return validate_asymptotics(dom, "BallConvergentRate",
                                    alphas or _rays(1e3, [0, math.pi / 8, 7 * math.pi / 8]))
    if regime == "ball-divergent":
        return validate_asymptotics(dom, "BallDivergent",
                                    alphas or [-t for t in np.linspace(10, 100, 10)])
    if regime == "hyperrectangle-families":
        return validate_asymptotics(dom, "HyperrectangleFamilies",
                                    alphas or [-20 * complex(math.cos(math.pi / 16),
                                                             math.sin(math.pi / 16))])
    rep = AsymptoticsReport(regime)
    if regime == "numerical-range":
        _validate_numerical_range(dom, alphas or [-3, -3 + 2j, 4j], rep)
    elif regime == "duality":
        _validate_duality(dom, rep)
    elif regime == "strip":
        _validate_strip(dom, rep)
    elif regime == "defective-pair":
        _validate_defective(dom, rep)
    else:
        raise UsageError(f"unknown regime {regime!r}")
    return rep


_DEFAULT_DOMAIN = {"ball-convergent-rate": "ball", "ball-divergent": "ball",
                   "hyperrectangle-families": "hyperrectangle"}


def _row_value(v):
    if isinstance(v, complex):
        return format_complex(v)
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".6g")
    return str(v)


def cmd_validate(args, out) -> int:
    if args.regime not in REGIMES:
        raise UsageError(f"unknown regime {args.regime!r}; choose from {', '.join(REGIMES)}")
    if args.domain is None:
        args.domain = _DEFAULT_DOMAIN.get(args.regime, "interval")
    dom = _domain(args)
    alphas = _complex_list(args.alpha) or None
    rep = run_validate(args.regime, dom, alphas)
    if args.json:
        doc = {"regime": args.regime, "domain": _domain_json(dom), "passed": rep.passed,
               "checks": [{"name": c[0], "measured": c[1], "threshold": c[2], "passed": c[3]}
                          for c in rep.checks],
               "rows": [{k: _row_value(v) if isinstance(v, complex) else v for k, v in r.items()}
                        for r in rep.rows]}
        out.write(dumps_json(doc) + "\n")
    else:
        for r in rep.rows:
            out.write("  ".join(f"{k}={_row_value(v)}" for k, v in r.items()) + "\n")
        for name, meas, thr, ok in rep.checks:
            out.write(f"{'PASS' if ok else 'FAIL'}  {name}: measured {meas:.6g}, "
                      f"threshold {thr:.6g}\n")
    return 0 if rep.passed else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="robinspec",
        description="Robin Laplacian eigenvalues with complex boundary parameter.",
        epilog="Complex literals: a, bi, a+bi or a-bi with no spaces (e.g. -2+0i, 3-1.5i). "
               "Use --alpha=-2 for values starting with a minus sign.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--domain", choices=["interval", "ball", "hyperrectangle"])
        sp.add_argument("--a", help="half-width(s), comma separated for hyperrectangles")
        sp.add_argument("--dim", type=int, default=2, help="ball dimension")

    sp = sub.add_parser("spectrum", help="certified eigenvalues as JSON")
    common(sp)
    sp.add_argument("--alpha", required=True, help="complex Robin parameter")
    sp.add_argument("--zmax", type=float, required=True, help="window radius for sqrt(lambda)")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("trace", help="eigencurve along a path in the alpha-plane as CSV")
    common(sp)
    sp.add_argument("--branch", help="even/odd (interval) or l (ball)")
    sp.add_argument("--path", required=True, help="comma separated alpha waypoints")
    sp.add_argument("--lambda0", help="eigenvalue at the first waypoint (default: lowest)")
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("validate", help="PASS/FAIL table for one regime")
    common(sp)
    sp.add_argument("--regime", required=True, help=", ".join(REGIMES))
    sp.add_argument("--alpha", help="comma separated alpha values overriding the defaults")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_validate)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    if getattr(args, "domain", None) is None and args.command != "validate":
        args.domain = "interval"
    try:
        return args.func(args, out)
    except (UsageError, ValueError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (RobinError, ArithmeticError, np.linalg.LinAlgError) as exc:
        err.write(f"computation failed: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
