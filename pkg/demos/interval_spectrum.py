"""Robin spectrum of the interval (-1, 1) for a few alpha, checked against FD.

Run: python demos/interval_spectrum.py
"""
import numpy as np

from robinspec import Interval, fd_interval, fd_spectrum, robin_spectrum


def main():
    dom = Interval(1.0)
    for alpha in (0, -2, 1 + 1j, -3 + 4j):
        spec = robin_spectrum(dom, alpha, 10.0)
        lam = np.array([r.lam for r in spec])[:6]
        fd = np.array(fd_spectrum(fd_interval(1.0, alpha, alpha, 2000), len(lam)))
        print(f"alpha = {alpha}")
        for r, f in zip(spec[:6], fd):
            print(f"  {r.lam.real:12.6f} {r.lam.imag:+12.6f}i  {r.symmetry:>8s}  "
                  f"|FD - exact| = {abs(f - r.lam):.1e}")
        print(f"  max relative error of FD: {np.max(np.abs(fd - lam) / np.maximum(np.abs(lam), 1)):.2e}")


if __name__ == "__main__":
    main()
