"""Follow interval and disk eigencurves lambda(alpha) along rays and classify the ends.

Bounded curves settle on Dirichlet eigenvalues; in the left half-plane the
lowest curves diverge like -alpha^2 (interval) or -alpha^2 + (d-1) alpha (ball).

Run: python demos/eigencurves.py
"""
import math

from robinspec import Ball, Interval, trace_curve


def describe(tr):
    ev = [f"{e.kind}({complex(e.value):.4g})" if e.value is not None else e.kind
          for e in tr.events]
    return f"{len(tr.t):4d} steps, end lambda = {tr.final:.6g}, events: {', '.join(ev) or 'none'}"


def main():
    I1 = Interval(1.0)
    print("interval, even branch from lambda = 0")
    for end in (100, -30, -20 + 20j):
        print(f"  alpha 0 -> {end}: {describe(trace_curve(I1, 'even', [0, end], 0.0))}")
    print("interval, odd branch from lambda = (pi/2)^2")
    lam0 = (math.pi / 2) ** 2
    for path in ([0, -10 + 5j], [0, 5j, -10 + 5j]):
        tr = trace_curve(I1, "odd", path, lam0, classify=False)
        print(f"  path {path}: end lambda = {tr.final:.8g}")
    print("  (the two paths enclose a branch point, so they end on different curves)")
    print("disk, l = 0 from lambda = 0")
    tr = trace_curve(Ball(2), 0, [0, -30], 0.0)
    b = tr.final + 900 - (-30)
    print(f"  alpha 0 -> -30: {describe(tr)}; lambda + alpha^2 - alpha = {b:.4f}")


if __name__ == "__main__":
    main()
