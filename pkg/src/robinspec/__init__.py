"""
Eigenvalues of the Laplacian with a complex Robin parameter on intervals,
hyperrectangles and balls.

The package computes certified spectra through secular equations, follows
eigencurves ``lam(alpha)`` in the complex ``alpha``-plane, and checks the
results against a finite-difference oracle.
"""
from .core import (Ball, BesselOverflow, BoundaryZero, ContourTouchesPole, CurveEvent,
                   CurveTrace, DegenerateDerivative, EigensolverFailure, EigenvalueRecord,
                   Hyperrectangle, Interval, LambdaRegion, NonConvergence, PoleProximity,
                   RegimeViolation, RegionSpec, RobinError, Sector, StallNoProgress,
                   UnresolvedCluster, ball_constants, lambda_region_contains, principal_sqrt)
from .dtn import (DtnBranch, ball_multiplicity, dtn_alpha, dtn_poles, dtn_residue,
                  interval_dtn_matrix)
from .secular import SecularFunction, find_roots, winding_count
from .specfun import bessel_j, bessel_j_ratio, bessel_zero
from .spectrum import (accumulation_experiment, duality_check, duality_roundtrip,
                       robin_spectrum)
from .tracer import (StepControl, closed_form_derivative, eigencurve_derivative,
                     strip_experiment, trace_curve, validate_asymptotics)
from .verify import (defective_pair_demo, estimate_trace_constants, fd_interval,
                     fd_radial_ball, fd_rectangle, fd_spectrum, gram_matrix,
                     numerical_range_check, numerical_range_sample, riesz_condition)

__version__ = "0.1.0"
