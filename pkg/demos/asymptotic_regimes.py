"""Residual tables of the asymptotic regimes (interval, disk, square).

Run: python demos/asymptotic_regimes.py
"""
import numpy as np

from robinspec import Ball, Hyperrectangle, Interval, validate_asymptotics


def show(rep):
    print(rep.regime)
    for name, measured, threshold, ok in rep.checks:
        print(f"  {'PASS' if ok else 'FAIL'}  {name}: {measured:.4g} (threshold {threshold:g})")


def main():
    show(validate_asymptotics(Interval(1.0), "IntervalDivergent", [-5, -10, -15, -20]))
    show(validate_asymptotics(Ball(2), "BallConvergentRate",
                              [1e3 * np.exp(1j * th) for th in (0, np.pi / 8, 7 * np.pi / 8)]))
    show(validate_asymptotics(Ball(3), "BallDivergent", -np.linspace(10, 100, 4)))
    rep = validate_asymptotics(Hyperrectangle((1.0, 1.0)), "HyperrectangleFamilies",
                               [-20 * np.exp(1j * np.pi / 16)])
    show(rep)
    print("  fitted coefficients:", {k: v for k, v in rep.rows[0].items() if k.startswith("C")})


if __name__ == "__main__":
    main()
