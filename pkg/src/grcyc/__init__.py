"""Cyclic-shift fixed points on complex Grassmannians and their cross-checks."""

from .grassmann import DEFAULT_TOL, PluckerVector, TolerancePolicy, plucker_from_matrix
from .cyclic_shift import enumerate_fixed_points, sigma_t_on_plucker, tnn_fixed_point
from .moment_curve import v0_matrix, v0_point

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL", "PluckerVector", "TolerancePolicy", "plucker_from_matrix",
    "enumerate_fixed_points", "sigma_t_on_plucker", "tnn_fixed_point",
    "v0_matrix", "v0_point",
]
