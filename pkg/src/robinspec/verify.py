"""
Finite-difference oracle and numeric checks of the functional-analytic claims.

Every operator is assembled from its sesquilinear form

    a[u, u] = u^H K u + sum_i robin_i |u_i|^2,      ||u||^2 = u^H W u,

with a real symmetric stiffness ``K``, a diagonal mass ``W`` (trapezoid or
midpoint weights) and boundary weights carrying ``alpha``.  The discrete
operator is ``A = W^{-1} (K + diag(robin))``; it is similar to the complex
symmetric matrix ``W^{-1/2} (K + diag(robin)) W^{-1/2}`` which is what the
eigensolver sees.

Interval: vertex grid ``x_i = -a + i h``, ``h = 2a/n``.  Eliminating the ghost
values with central differences of the Robin conditions gives boundary rows
``((2 + 2 h alpha) u_0 - 2 u_1)/h^2``, second order in ``h``.

Ball: radial nodes ``r_i = (i - 1/2) h``, ``h = 1/(n - 1/2)``, so the last node
sits on ``r = 1`` with a half cell and the flux through ``r = 0`` vanishes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded
from scipy import sparse
from scipy.sparse import diags
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigs, splu

from .core import (Ball, EigensolverFailure, Hyperrectangle, Interval, LambdaRegion,
                   ball_constants, lambda_region_contains)
from .eig import eigvals

__all__ = ["DiscreteOperator", "fd_interval", "fd_radial_ball", "fd_rectangle",
           "fd_spectrum", "fd_eigenpairs", "numerical_range_sample", "rayleigh_parts",
           "numerical_range_check", "gram_matrix", "riesz_condition",
           "estimate_trace_constants", "richardson_order", "DefectiveReport",
           "defective_pair_demo"]

SEED = 42


@dataclass
class DiscreteOperator:
    """Discretized Robin Laplacian ``A = W^{-1}(K + diag(robin))``.

    ``n`` is the number of unknowns.  ``boundary`` holds the boundary
    quadrature weight of every node (zero in the interior) and ``robin`` the
    product of that weight with the local ``alpha``.
    """
    n: int
    h: float
    matrix: np.ndarray
    weights: np.ndarray
    stiffness: np.ndarray
    boundary: np.ndarray
    robin: np.ndarray
    domain: object
    alpha: object
    nodes: np.ndarray
    depth: np.ndarray
    tridiagonal: bool = False
    scheme: dict = field(default_factory=dict)

    @property
    def is_sparse(self) -> bool:
        return sparse.issparse(self.matrix)

    @property
    def form(self):
        if self.is_sparse:
            return (self.stiffness + sparse.diags(self.robin)).tocsr()
        return self.stiffness + np.diag(self.robin)

    def symmetric(self):
        """``W^{-1/2} (K + diag(robin)) W^{-1/2}``, complex symmetric."""
        s = 1.0 / np.sqrt(self.weights)
        if self.is_sparse:
            D = sparse.diags(s)
            return (D @ self.form @ D).tocsc()
        return self.form * s[:, None] * s[None, :]

    def is_symmetrizable(self, tol: float = 1e-12) -> bool:
        """For real ``alpha``: ``W A`` is real symmetric."""
        F = self.weights[:, None] * self.matrix if not self.is_sparse else self.form
        if self.is_sparse:
            diff = abs(F - F.conj().T).max()
            return bool(diff <= tol * abs(F).max())
        return bool(np.allclose(F, F.T.conj(), rtol=0, atol=tol * np.abs(F).max()))


def _assemble(K, w, bnd, robin, **kw):
    if sparse.issparse(K):
        A = (sparse.diags(1.0 / w) @ (K + sparse.diags(robin))).tocsr()
    else:
        A = (K + np.diag(robin)) / w[:, None]
    return DiscreteOperator(n=len(w), matrix=A, weights=w, stiffness=K, boundary=bnd,
                            robin=robin, **kw)


def fd_interval(a: float, alpha_left, alpha_right, n: int) -> DiscreteOperator:
    """Ghost-point FD operator on ``(-a, a)`` with ``n`` cells (``n + 1`` nodes).

    Boundary conditions ``-u'(-a) + alpha_left u(-a) = 0`` and
    ``u'(a) + alpha_right u(a) = 0``.
    """
    if n < 16:
        raise ValueError("need n >= 16")
    h = 2.0 * a / n
    N = n + 1
    x = np.linspace(-a, a, N)
    main = np.full(N, 2.0 / h)
    main[0] = main[-1] = 1.0 / h
    K = np.diag(main) - np.diag(np.full(N - 1, 1.0 / h), 1) - np.diag(np.full(N - 1, 1.0 / h), -1)
    w = np.full(N, h)
    w[0] = w[-1] = h / 2
    bnd = np.zeros(N)
    bnd[0] = bnd[-1] = 1.0
    robin = np.zeros(N, dtype=complex)
    robin[0], robin[-1] = complex(alpha_left), complex(alpha_right)
    al = complex(alpha_left)
    alpha = al if al == complex(alpha_right) else (al, complex(alpha_right))
    return _assemble(K, w, bnd, robin, h=h, domain=Interval(a), alpha=alpha, nodes=x,
                     depth=a - np.abs(x), tridiagonal=True,
                     scheme={"order": 2, "boundary": "ghost point, central"})


def fd_radial_ball(d: int, l: int, alpha, n: int) -> DiscreteOperator:
    """Radial operator ``-u'' - (d-1)/r u' + l(l+d-2)/r^2 u`` on ``(0, 1)``.

    Robin condition ``u'(1) + alpha u(1) = 0``.  Nodes are offset by ``h/2`` so
    ``r = 0`` is never a node; weights are midpoint values of ``r^(d-1) dr``.
    """
    if n < 16:
        raise ValueError("need n >= 16")
    R = 1.0
    h = R / (n - 0.5)
    r = (np.arange(1, n + 1) - 0.5) * h
    w = h * r ** (d - 1)
    w[-1] *= 0.5
    faces = np.arange(1, n) * h
    c = faces ** (d - 1) / h
    main = np.zeros(n)
    main[:-1] += c
    main[1:] += c
    mu = l * (l + d - 2)
    main += mu * w / r ** 2
    K = np.diag(main) - np.diag(c, 1) - np.diag(c, -1)
    bnd = np.zeros(n)
    bnd[-1] = R ** (d - 1)
    robin = complex(alpha) * bnd
    return _assemble(K, w, bnd, robin.astype(complex), h=h, domain=Ball(d),
                     alpha=complex(alpha), nodes=r, depth=R - r, tridiagonal=True,
                     scheme={"order": 2, "boundary": "half cell at r = R", "l": l})


DENSE_MAX = 2500


def fd_rectangle(a, alpha, n: int, sparse_format: bool | None = None) -> DiscreteOperator:
    """Kronecker-sum operator on ``prod (-a_j, a_j)`` from interval operators.

    Matrices are stored sparse (CSR) when ``sparse_format`` is true, or by
    default when there are more than ``DENSE_MAX`` unknowns.
    """
    a = tuple(float(x) for x in np.atleast_1d(a))
    if sparse_format is None:
        sparse_format = (n + 1) ** len(a) > DENSE_MAX
    parts = [fd_interval(aj, alpha, alpha, n) for aj in a]
    K, w, bnd, robin = parts[0].stiffness, parts[0].weights, parts[0].boundary, parts[0].robin
    kron, diag = (sparse.kron, sparse.diags) if sparse_format else (np.kron, np.diag)
    if sparse_format:
        K = sparse.csr_matrix(K)
    nodes = parts[0].nodes[:, None]
    depth = parts[0].depth
    for p in parts[1:]:
        I0, I1 = diag(w), diag(p.weights)
        Kp = sparse.csr_matrix(p.stiffness) if sparse_format else p.stiffness
        K = kron(K, I1) + kron(I0, Kp)
        bnd_new = np.kron(bnd, p.weights) + np.kron(w, p.boundary)
        robin = np.kron(robin, p.weights) + np.kron(w, p.robin)
        w = np.kron(w, p.weights)
        bnd = bnd_new
        nodes = np.hstack([np.repeat(nodes, len(p.nodes), axis=0),
                           np.tile(p.nodes, len(nodes))[:, None]])
        depth = np.minimum(np.repeat(depth, len(p.depth)), np.tile(p.depth, len(depth)))
    return _assemble(K, w, bnd, robin, h=parts[0].h, domain=Hyperrectangle(a),
                     alpha=complex(alpha), nodes=nodes, depth=depth, tridiagonal=len(a) == 1,
                     scheme={"order": 2, "boundary": "ghost point, Kronecker sum"})


# ---------------------------------------------------------------------------
# spectra and eigenvectors

def _sorted_smallest(lam, count):
    lam = np.asarray(lam)
    idx = np.argsort(np.abs(lam), kind="stable")[:count]
    out = lam[idx]
    return out[np.lexsort((out.imag, out.real))]


ARNOLDI_MIN = 600


def _arnoldi(op, count):
    S = op.symmetric()
    if op.is_sparse:
        T = S
    else:
        T = diags([np.diag(S, -1), np.diag(S), np.diag(S, 1)], [-1, 0, 1], format="csc")
    # shift just off the origin so a zero eigenvalue does not make the LU singular
    sigma = 1e-7j * (1 + np.abs(op.robin).max())
    k = min(count + 6, op.n - 2)
    try:
        lam = eigs(T, k=k, sigma=sigma, which="LM", return_eigenvectors=False,
                   tol=1e-14, maxiter=50 * op.n)
    except (ArpackError, ArpackNoConvergence) as exc:
        raise EigensolverFailure(f"shift-invert Arnoldi failed: {exc}") from None
    return lam


def fd_spectrum(op: DiscreteOperator, count: int, method: str = "auto") -> list[complex]:
    """The ``count`` eigenvalues of smallest modulus, sorted by ``(Re, Im)``.

    ``method``: ``"qr"`` (own Hessenberg QR), ``"lapack"``, ``"arnoldi"``
    (shift-invert near 0, tridiagonal or sparse operators) or ``"auto"``,
    which uses QR for small matrices and Arnoldi for large tridiagonal ones
    when few eigenvalues are requested.  Sparse operators always use Arnoldi.
    """
    if not 1 <= count <= op.n:
        raise ValueError("need 1 <= count <= n")
    if method == "auto" and op.tridiagonal and op.n >= ARNOLDI_MIN and count <= op.n // 20:
        method = "arnoldi"
    if op.is_sparse:
        if method not in ("auto", "arnoldi") or count > op.n - 8:
            raise ValueError("sparse operators support Arnoldi with count <= n - 8 only")
        method = "arnoldi"
    if method == "arnoldi":
        lam = _arnoldi(op, count)
    else:
        lam = eigvals(op.symmetric(), method)
    if not np.all(np.isfinite(lam)):
        raise EigensolverFailure("non-finite eigenvalues")
    return [complex(x) for x in _sorted_smallest(lam, count)]


def _solver(op, sigma, S=None):
    S = op.symmetric() if S is None else S
    if op.tridiagonal:
        ab = np.zeros((3, op.n), dtype=complex)
        ab[0, 1:] = np.diag(S, 1)
        ab[1] = np.diag(S) - sigma
        ab[2, :-1] = np.diag(S, -1)
        return lambda b: solve_banded((1, 1), ab, b)
    if sparse.issparse(S):
        lu = splu((S - sigma * sparse.identity(op.n, format="csc")).tocsc())
        return lu.solve
    M = S - sigma * np.eye(op.n)
    return lambda b: np.linalg.solve(M, b)


def fd_eigenpairs(op: DiscreteOperator, k: int, method: str = "auto"):
    """First ``k`` eigenvalues (as in ``fd_spectrum``) and ``W``-normalized eigenvectors.

    Vectors come from inverse iteration on the symmetrized matrix; column
    ``j`` of the returned array belongs to eigenvalue ``j``.
    """
    lam = np.array(fd_spectrum(op, k, method))
    rng = np.random.default_rng(SEED)
    b0 = rng.standard_normal(op.n) + 1j * rng.standard_normal(op.n)
    U = np.empty((op.n, k), dtype=complex)
    S = op.symmetric()
    for j, lj in enumerate(lam):
        sigma = lj + 1e-11 * (1 + abs(lj))
        solve = _solver(op, sigma, S)
        y = b0 / np.linalg.norm(b0)
        for _ in range(3):
            y = solve(y)
            if not np.all(np.isfinite(y)):
                raise EigensolverFailure("inverse iteration broke down")
            y /= np.linalg.norm(y)
        u = y / np.sqrt(op.weights)
        u /= np.sqrt(np.real(np.vdot(u, op.weights * u)))
        i = np.argmax(np.abs(u))
        U[:, j] = u * (abs(u[i]) / u[i])
    return lam, U


def gram_matrix(op: DiscreteOperator, k: int, method: str = "auto") -> np.ndarray:
    """Weighted inner products ``<u_i, u_j>_W`` of the first ``k`` normalized eigenvectors."""
    _, U = fd_eigenpairs(op, k, method)
    return U.conj().T @ (op.weights[:, None] * U)


def riesz_condition(op: DiscreteOperator, k: int, method: str = "auto") -> float:
    """Spectral condition number of the ``k x k`` Gram matrix."""
    G = gram_matrix(op, k, method)
    ev = np.linalg.eigvalsh(0.5 * (G + G.conj().T))
    if ev[0] <= 0:
        raise EigensolverFailure("Gram matrix is not positive definite")
    return float(ev[-1] / ev[0])


# ---------------------------------------------------------------------------
# numerical range and trace constants

def _boundary_layers(op, kappas):
    return np.exp(-np.outer(op.depth, kappas))


def _sample_vectors(op, n_samples, rng):
    """Columns of random test vectors: white noise, smooth, boundary layers (in turn)."""
    N = op.n
    dmax = max(op.depth.max(), 1e-300)
    kmax = 0.5 / op.h
    U = np.empty((N, n_samples), dtype=complex)
    for j in range(n_samples):
        kind = j % 3
        if kind == 0:
            u = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        elif kind == 1:
            c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
            u = sum(c[k] * np.cos(k * np.pi * op.depth / dmax) for k in range(6))
        else:
            kap = math.exp(rng.uniform(0.0, math.log(kmax)))
            c = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            u = c[0] * np.exp(-kap * op.depth) + c[1] * rng.standard_normal(N) * 1e-2
        U[:, j] = u
    return U


def rayleigh_parts(op: DiscreteOperator, U):
    """Gradient energy ``t``, boundary mass ``s`` and form value, per column of ``U``."""
    U = np.asarray(U, dtype=complex)
    if U.ndim == 1:
        U = U[:, None]
    nrm = np.real(np.einsum("ij,i,ij->j", U.conj(), op.weights, U))
    t = np.real(np.einsum("ij,ij->j", U.conj(), op.stiffness @ U)) / nrm
    a2 = np.abs(U) ** 2
    s = (op.boundary @ a2) / nrm
    val = t + (op.robin @ a2) / nrm
    return t, s, val


def numerical_range_sample(op: DiscreteOperator, n_samples: int, seed: int = SEED) -> list[complex]:
    """Discrete Rayleigh quotients ``a[u, u]/||u||^2`` of seeded random vectors."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    _, _, val = rayleigh_parts(op, _sample_vectors(op, n_samples, rng))
    return [complex(v) for v in val]


def numerical_range_check(op: DiscreteOperator, n_samples: int = 200, seed: int = SEED,
                          C1=None, C2=None, margin: float = 0.05):
    """Sample the numerical range and test each value against the inflated region.

    Ball constants default to ``(2, d + 2 sqrt(d - 1))``; otherwise they are
    estimated with ``estimate_trace_constants``.  Returns ``(values, inside)``.
    """
    if isinstance(op.alpha, tuple):
        raise ValueError("the region is defined for constant alpha")
    if C1 is None or C2 is None:
        if isinstance(op.domain, Ball):
            c1, c2 = ball_constants(op.domain.d)
        else:
            c1, c2 = estimate_trace_constants(op.domain, op, n_samples, seed)
        C1 = c1 if C1 is None else C1
        C2 = c2 if C2 is None else C2
    region = LambdaRegion(op.alpha, C1, C2).inflated(margin)
    vals = numerical_range_sample(op, n_samples, seed)
    inside = [lambda_region_contains(region, v, rtol=1e-9) for v in vals]
    return vals, inside


def estimate_trace_constants(domain, op: DiscreteOperator, n_samples: int = 200,
                             seed: int = SEED) -> tuple[float, float]:
    """Fit ``s <= C1 sqrt(t) + C2`` to sampled boundary mass ``s`` and energy ``t``.

    ``C1_hat`` is the least-squares slope of ``s`` against ``sqrt(t)`` over the
    steeper half of a family of boundary layers ``exp(-kappa dist)``;
    ``C2_hat`` is the smallest intercept that puts every sample (random,
    adversarial and the constant vector) under the line.
    """
    if domain is not None and type(domain) is not type(op.domain):
        raise ValueError("domain does not match the operator")
    rng = np.random.default_rng(seed)
    kap = np.geomspace(2.0, 0.1 / op.h, 40)
    t_a, s_a, _ = rayleigh_parts(op, _boundary_layers(op, kap))
    top = kap >= np.sqrt(kap[0] * kap[-1])
    X = np.column_stack([np.sqrt(t_a[top]), np.ones(top.sum())])
    C1 = float(np.linalg.lstsq(X, s_a[top], rcond=None)[0][0])
    t_r, s_r, _ = rayleigh_parts(op, _sample_vectors(op, n_samples, rng))
    t_c, s_c, _ = rayleigh_parts(op, np.ones(op.n))
    t = np.concatenate([t_a, t_r, t_c])
    s = np.concatenate([s_a, s_r, s_c])
    C2 = float(np.max(s - C1 * np.sqrt(np.maximum(t, 0.0))))
    return C1, C2


def richardson_order(values, exact) -> float:
    """Observed order from errors on grids refined by factors of two (LS slope)."""
    err = np.abs(np.asarray(values) - exact)
    if err.ndim > 1:
        # several eigenvalues per grid: track the worst one
        err = err.max(axis=tuple(range(1, err.ndim)))
    k = np.arange(len(err))
    return float(-np.polyfit(k, np.log2(err), 1)[0])


# ---------------------------------------------------------------------------
# variable alpha: the defective pair

@dataclass
class DefectiveReport:
    """Collision of the eigenvalues ``t^2`` and ``k_j^2`` for ``alpha = (-it, +it)``."""
    t_star: float
    offsets: np.ndarray
    gaps: np.ndarray
    exponent: float
    overlaps: dict
    t_crossing: float
    eps: np.ndarray
    perturbed_gaps: np.ndarray
    perturbation_exponent: float

    @property
    def passed(self) -> bool:
        return abs(self.exponent - 0.5) <= 0.1


def _all_sym_eigs(op):
    S = op.symmetric()
    return eigvals(S, "lapack")


def _pair(a, t, n, target, pert=0.0):
    op = fd_interval(a, -1j * t, 1j * t + pert, n)
    lam = _all_sym_eigs(op)
    idx = np.argsort(np.abs(lam - target))[:2]
    return op, lam[idx]


def _pair_overlap(a, t, n, target):
    op, lam = _pair(a, t, n, target)
    vecs = []
    S = op.symmetric()
    for lj in lam:
        solve = _solver(op, lj + 1e-11 * (1 + abs(lj)), S)
        y = np.ones(op.n, dtype=complex)
        for _ in range(3):
            y = solve(y)
            y /= np.linalg.norm(y)
        u = y / np.sqrt(op.weights)
        vecs.append(u / np.sqrt(np.real(np.vdot(u, op.weights * u))))
    return float(abs(np.vdot(vecs[0], op.weights * vecs[1])))


def defective_pair_demo(a: float = 1.0, j: int = 1, n: int = 400, offsets=None,
                        eps=None, grids=(100, 200, 400)) -> DefectiveReport:
    """Eigenvalue collision for the interval with ``alpha(-a) = -it``, ``alpha(a) = it``.

    The continuum spectrum is ``{t^2} U {k_j^2}``, ``k_j = j pi/(2a)``, with a
    Jordan block at ``t = k_j``.  Reported: the gap of the two eigenvalues
    nearest ``k_j^2`` at ``t = k_j + offset`` and its log-log slope; the
    eigenvector overlap at ``t = k_j`` on refined grids; and, at the discrete
    crossing ``t_h``, the gap after perturbing ``alpha(a)`` by ``eps`` with its
    slope (a Jordan block splits like ``sqrt(eps)``).
    """
    t_star = j * np.pi / (2 * a)
    target = t_star ** 2
    offsets = np.logspace(-3, -1, 5) if offsets is None else np.asarray(offsets, float)
    gaps = np.array([abs(np.diff(_pair(a, t_star + dt, n, target)[1])[0]) for dt in offsets])
    expo = float(np.polyfit(np.log(offsets), np.log(gaps), 1)[0])
    overlaps = {m: _pair_overlap(a, t_star, m, target) for m in grids}

    # discrete crossing: the moving eigenvalue passes through the fixed one
    from scipy.optimize import minimize_scalar
    res = minimize_scalar(lambda t: abs(np.diff(_pair(a, t, n, target)[1])[0]),
                          bounds=(t_star - 0.05, t_star + 0.05), method="bounded",
                          options={"xatol": 1e-12})
    t_h = float(res.x)
    eps = np.logspace(-6, -2, 5) if eps is None else np.asarray(eps, float)
    pg = np.array([abs(np.diff(_pair(a, t_h, n, target, pert=e)[1])[0]) for e in eps])
    pexp = float(np.polyfit(np.log(eps), np.log(pg), 1)[0])
    return DefectiveReport(t_star, offsets, gaps, expo, overlaps, t_h, eps, pg, pexp)
