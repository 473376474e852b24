"""
Dense complex eigenvalues by Householder reduction and shifted Hessenberg QR.

Only eigenvalues are produced, so each QR sweep acts on the active diagonal
block alone.  Givens rotations are applied row/column-wise with numpy slices.
The cost is dominated by Python overhead per rotation, which keeps the solver
practical for a few hundred unknowns; ``eigvals`` falls back to LAPACK above
``QR_MAX`` unless the caller insists.
"""
from __future__ import annotations

import numpy as np

from .core import EigensolverFailure

__all__ = ["hessenberg", "hessenberg_eigvals", "eigvals", "QR_MAX"]

QR_MAX = 200
_EPS = np.finfo(float).eps


def hessenberg(A) -> np.ndarray:
    """Upper Hessenberg matrix unitarily similar to ``A`` (Householder)."""
    H = np.array(A, dtype=complex, copy=True)
    n = H.shape[0]
    if H.ndim != 2 or H.shape[1] != n:
        raise ValueError("square matrix required")
    for k in range(n - 2):
        x = H[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        nx = np.hypot(abs(x[0]), tail)
        v = x.copy()
        ph = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v[0] += ph * nx
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _wilkinson(B):
    a, b, c, d = B[-2, -2], B[-2, -1], B[-1, -2], B[-1, -1]
    half = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b * c)
    m1, m2 = half + disc, half - disc
    return m1 if abs(m1 - d) <= abs(m2 - d) else m2


def _qr_sweep(B, mu):
    """One explicitly shifted QR step ``B - mu = QR, B <- RQ + mu`` in place."""
    m = B.shape[0]
    idx = np.arange(m)
    B[idx, idx] -= mu
    rots = []
    for k in range(m - 1):
        a, b = B[k, k], B[k + 1, k]
        r = np.hypot(abs(a), abs(b))
        if r == 0.0:
            c, s = 1.0, 0.0
        else:
            c, s = a / r, b / r
        x = B[k, k:].copy()
        y = B[k + 1, k:].copy()
        B[k, k:] = np.conj(c) * x + np.conj(s) * y
        B[k + 1, k:] = -s * x + c * y
        rots.append((c, s))
    for k, (c, s) in enumerate(rots):
        top = min(k + 2, m - 1) + 1
        x = B[:top, k].copy()
        y = B[:top, k + 1].copy()
        B[:top, k] = c * x + s * y
        B[:top, k + 1] = -np.conj(s) * x + np.conj(c) * y
    B[idx, idx] += mu


def hessenberg_eigvals(H, maxiter: int = 60) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by shifted QR with deflation.

    Parameters
    ----------
    H : (n, n) array_like
        Upper Hessenberg; entries below the subdiagonal are ignored.
    maxiter : int
        Sweeps allowed per eigenvalue before ``EigensolverFailure``.
    """
    H = np.triu(np.array(H, dtype=complex, copy=True), -1)
    n = H.shape[0]
    w = np.empty(n, dtype=complex)
    if n == 0:
        return w
    if not np.all(np.isfinite(H)):
        raise EigensolverFailure("non-finite matrix entries")
    hi = n - 1
    its = 0
    while hi >= 0:
        l = hi
        while l > 0:
            s = abs(H[l - 1, l - 1]) + abs(H[l, l])
            if s == 0.0:
                s = np.abs(H[max(l - 2, 0):hi + 1, max(l - 2, 0):hi + 1]).max()
            if abs(H[l, l - 1]) <= _EPS * s:
                H[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            w[hi] = H[hi, hi]
            hi -= 1
            its = 0
            continue
        its += 1
        if its > maxiter:
            raise EigensolverFailure(f"QR did not deflate eigenvalue {hi} in {maxiter} sweeps")
        B = H[l:hi + 1, l:hi + 1]
        if its % 11 == 0:
            # exceptional shift to break cycles
            mu = B[-1, -1] + 0.75 * abs(B[-1, -2]) * (1 + 1j)
        else:
            mu = _wilkinson(B)
        _qr_sweep(B, mu)
    return w


def eigvals(A, method: str = "auto") -> np.ndarray:
    """Eigenvalues of a dense complex matrix.

    ``method`` is ``"qr"`` (Hessenberg QR above), ``"lapack"`` (numpy) or
    ``"auto"`` (QR up to ``QR_MAX`` unknowns).
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if method == "auto":
        method = "qr" if n <= QR_MAX else "lapack"
    if method == "qr":
        return hessenberg_eigvals(hessenberg(A))
    if method == "lapack":
        try:
            return np.linalg.eigvals(A)
        except np.linalg.LinAlgError as exc:
            raise EigensolverFailure(str(exc)) from None
    raise ValueError(f"unknown method {method!r}")
