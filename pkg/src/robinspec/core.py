"""
Shared value types for the complex Robin Laplacian.

Conventions
-----------
The spectral parameter is ``lam`` and ``z = principal_sqrt(lam)`` lives in the
closed right half-plane.  On the negative real axis the square root is taken
on the upper side, so ``principal_sqrt(-1) == 1j``.

The region ``Lambda`` bounding the numerical range is::

    { t + alpha*s : t >= 0, 0 <= s <= C1*sqrt(t) + C2 }
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "RobinError", "PoleProximity", "BoundaryZero", "NonConvergence",
    "UnresolvedCluster", "ContourTouchesPole", "DegenerateDerivative",
    "StallNoProgress", "RegimeViolation", "EigensolverFailure",
    "BesselOverflow",
    "principal_sqrt", "Sector", "Interval", "Hyperrectangle", "Ball",
    "DomainSpec", "LambdaRegion", "lambda_region_contains", "RegionSpec",
    "EigenvalueRecord", "CurveEvent", "CurveTrace", "ball_constants",
]


# ---------------------------------------------------------------------------
# errors

class RobinError(Exception):
    """Base class of all computational errors raised by the package."""


class PoleProximity(RobinError):
    pass


class BoundaryZero(RobinError):
    pass


class NonConvergence(RobinError):
    pass


class UnresolvedCluster(RobinError):
    pass


class ContourTouchesPole(RobinError):
    pass


class DegenerateDerivative(RobinError):
    pass


class StallNoProgress(RobinError):
    pass


class RegimeViolation(RobinError):
    pass


class EigensolverFailure(RobinError):
    pass


class BesselOverflow(RobinError, OverflowError):
    pass


# ---------------------------------------------------------------------------
# square root

def principal_sqrt(z):
    """Square root with ``Re >= 0`` and the negative real axis sent to ``+i``.

    Works on scalars and arrays.  ``numpy.sqrt`` already follows this
    convention except for a negative real carrying a ``-0.0`` imaginary part,
    which is normalised here.
    """
    zc = np.asarray(z, dtype=complex)
    w = np.sqrt(zc.real + 1j * np.where(zc.imag == 0.0, 0.0, zc.imag))
    if w.ndim == 0:
        return complex(w)
    return w


# ---------------------------------------------------------------------------
# sectors

@dataclass(frozen=True)
class Sector:
    """Open angular sector around an axis.

    ``S_plus``: ``theta < arg z < pi - theta``;  ``T_plus``: ``|arg z| < theta``;
    the ``minus`` variants are the reflections ``-S_plus`` and ``-T_plus``.
    ``theta`` may exceed ``pi/2`` for the T sectors.
    """
    kind: str
    theta: float

    def __post_init__(self):
        if self.kind not in ("S_plus", "S_minus", "T_plus", "T_minus"):
            raise ValueError(f"unknown sector kind {self.kind!r}")
        if not 0.0 < self.theta < math.pi:
            raise ValueError("theta must lie in (0, pi)")

    def contains(self, z) -> bool | np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.kind.endswith("minus"):
            z = -z
        nz = z != 0
        arg = np.angle(z)
        if self.kind.startswith("S"):
            out = (arg > self.theta) & (arg < math.pi - self.theta)
        else:
            out = np.abs(arg) < self.theta
        out = out & nz
        return bool(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# domains

@dataclass(frozen=True)
class Interval:
    """The interval ``(-a, a)``."""
    a: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("half-width must be positive")

    @property
    def tag(self):
        return "interval"

    @property
    def volume(self):
        return 2.0 * self.a

    @property
    def boundary_measure(self):
        return 2.0


@dataclass(frozen=True)
class Hyperrectangle:
    """The box ``(-a_1, a_1) x ... x (-a_d, a_d)``."""
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        if len(self.a) < 1 or any(not x > 0 for x in self.a):
            raise ValueError("half-widths must be positive")

    @property
    def tag(self):
        return "hyperrectangle"

    @property
    def dim(self):
        return len(self.a)

    @property
    def edges(self):
        return tuple(Interval(x) for x in self.a)


@dataclass(frozen=True)
class Ball:
    """Ball of radius ``R`` (fixed to 1 by the solvers) in dimension ``d``."""
    d: int = 2
    R: float = 1.0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError("ball dimension must be an integer >= 2")
        if self.R != 1.0:
            raise ValueError("only the unit ball is supported")
        object.__setattr__(self, "d", int(self.d))

    @property
    def tag(self):
        return "ball"

    @property
    def volume(self):
        return math.pi ** (self.d / 2) / math.gamma(self.d / 2 + 1)

    @property
    def boundary_measure(self):
        return self.d * self.volume


DomainSpec = Interval | Hyperrectangle | Ball


def ball_constants(d: int, R: float = 1.0) -> tuple[float, float]:
    """Trace constants ``(C1, C2)`` for the ball: ``C1 = 2``, ``C2 = d/R + 2 sqrt(d-1)/R``."""
    return 2.0, (d + 2.0 * math.sqrt(d - 1)) / R


# ---------------------------------------------------------------------------
# numerical range region

@dataclass(frozen=True)
class LambdaRegion:
    alpha: complex
    C1: float = 2.0
    C2: float = 4.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.C1 < 0 or self.C2 < 0:
            raise ValueError("trace constants must be nonnegative")

    def inflated(self, margin: float) -> "LambdaRegion":
        return LambdaRegion(self.alpha, self.C1 * (1 + margin), self.C2 * (1 + margin))

    def contains(self, lam) -> bool:
        return lambda_region_contains(self, lam)

    def real_bound(self) -> float:
        """Lower bound on ``Re lam`` implied by the region."""
        ra = self.alpha.real
        if ra >= 0:
            return 0.0
        return -self.C1 ** 2 / 4 * ra * ra - self.C2 * abs(ra)


def lambda_region_contains(region: LambdaRegion, lam, rtol: float = 1e-12) -> bool:
    """Whether ``lam = t + alpha*s`` with ``t >= 0`` and ``0 <= s <= C1 sqrt(t) + C2``.

    ``rtol`` absorbs rounding in the decomposition only.
    """
    lam = complex(lam)
    al = region.alpha
    tol = rtol * (1.0 + abs(lam))
    if al.imag != 0.0:
        s = lam.imag / al.imag
        t = lam.real - s * al.real
        if s < -tol or t < -tol:
            return False
        return s <= region.C1 * math.sqrt(max(t, 0.0)) + region.C2 + tol
    # degenerate strip: the region collapses onto the real axis
    if abs(lam.imag) > 1e-10 * (1.0 + abs(lam)):
        return False
    if al.real == 0.0:
        return lam.real >= -tol
    return lam.real >= region.real_bound() - tol


# ---------------------------------------------------------------------------
# search rectangles in the z-plane

@dataclass(frozen=True)
class RegionSpec:
    """Closed rectangle ``[re_min, re_max] x [im_min, im_max]`` in the z-plane."""
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_max > self.re_min and self.im_max > self.im_min):
            raise ValueError("degenerate region")

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def width(self):
        return self.re_max - self.re_min

    @property
    def height(self):
        return self.im_max - self.im_min

    @property
    def diameter(self):
        return math.hypot(self.width, self.height)

    def contains(self, z, tol: float = 0.0):
        z = np.asarray(z, dtype=complex)
        out = ((z.real >= self.re_min - tol) & (z.real <= self.re_max + tol)
               & (z.imag >= self.im_min - tol) & (z.imag <= self.im_max + tol))
        return bool(out) if out.ndim == 0 else out

    def dilated(self, eps: float) -> "RegionSpec":
        return RegionSpec(self.re_min - eps, self.re_max + eps,
                          self.im_min - eps, self.im_max + eps)

    def split(self, frac: float = 0.5) -> list["RegionSpec"]:
        """Split across the longer side at ``frac`` of its length."""
        if self.width >= self.height:
            x = self.re_min + frac * self.width
            return [RegionSpec(self.re_min, x, self.im_min, self.im_max),
                    RegionSpec(x, self.re_max, self.im_min, self.im_max)]
        y = self.im_min + frac * self.height
        return [RegionSpec(self.re_min, self.re_max, self.im_min, y),
                RegionSpec(self.re_min, self.re_max, y, self.im_max)]

    def corners(self) -> np.ndarray:
        """Counter-clockwise corners starting at the lower left."""
        return np.array([complex(self.re_min, self.im_min), complex(self.re_max, self.im_min),
                         complex(self.re_max, self.im_max), complex(self.re_min, self.im_max)])


# ---------------------------------------------------------------------------
# result records

@dataclass(frozen=True)
class EigenvalueRecord:
    lam: complex
    multiplicity: int = 1
    symmetry: object = None
    residual: float = 0.0
    certified: bool = True

    @property
    def z(self) -> complex:
        return principal_sqrt(self.lam)


@dataclass(frozen=True)
class CurveEvent:
    t: float
    kind: str            # "CrossingProximity" | "DirichletConvergence" | "Divergence"
    value: complex | float | None = None


@dataclass
class CurveTrace:
    path: list                                  # (t, alpha) waypoints
    t: np.ndarray = field(default_factory=lambda: np.zeros(0))
    alpha: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    lam: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    dlam: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    events: list = field(default_factory=list)

    @property
    def samples(self) -> list:
        return list(zip(self.t.tolist(), self.lam.tolist(), self.dlam.tolist()))

    @property
    def final(self) -> complex:
        return complex(self.lam[-1])

    def event(self, kind: str) -> CurveEvent | None:
        for ev in self.events:
            if ev.kind == kind:
                return ev
        return None


def as_complex_array(x: Sequence | complex) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=complex))
