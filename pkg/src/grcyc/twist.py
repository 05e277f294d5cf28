"""The Muller-Speyer twist map on the open positroid cell and its relation to sigma."""

from __future__ import annotations

import numpy as np

from .cyclic_shift import FixedPoint, enumerate_fixed_points, sigma_power
from .errors import OutsidePiCircle
from .grassmann import (
    DEFAULT_TOL,
    PluckerVector,
    TolerancePolicy,
    as_matrix,
    matrix_from_plucker,
    plucker_from_matrix,
    projective_distance,
    torus_equivalent,
)
from .superpotential import in_pi_circle  # noqa: F401  (re-exported)


def _twist(A, offsets, tol: TolerancePolicy) -> np.ndarray:
    A = as_matrix(A)
    k, n = A.shape
    out = np.empty_like(A)
    rhs = np.zeros(k, dtype=complex)
    rhs[0] = 1.0
    scale = float(np.linalg.norm(A, axis=0).max()) ** k or 1.0
    for j in range(n):
        cols = [(j + d) % n for d in offsets]
        system = A[:, cols].T
        if abs(np.linalg.det(system)) <= tol.zero_eps * scale:
            raise OutsidePiCircle(f"cyclic interval at column {j + 1} has vanishing minor")
        out[:, j] = np.linalg.solve(system, rhs)
    return out


def right_twist(A, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Column j pairs to 1 with column j of A and to 0 with columns j+1..j+k-1 (mod n)."""
    k = as_matrix(A).shape[0]
    return _twist(A, range(k), tol)


def left_twist(A, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Column j pairs to 1 with column j of A and to 0 with columns j-1..j-k+1 (mod n)."""
    k = as_matrix(A).shape[0]
    return _twist(A, [-d for d in range(k)], tol)


def twist_point(P: PluckerVector, left: bool = False, tol: TolerancePolicy = DEFAULT_TOL) -> PluckerVector:
    A = matrix_from_plucker(P)
    B = left_twist(A, tol) if left else right_twist(A, tol)
    return plucker_from_matrix(B, tol)


def periodicity_check(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """tau^2(P) and sigma^k(P) agree modulo the column-rescaling torus."""
    tau2 = twist_point(twist_point(P, tol=tol), tol=tol)
    return torus_equivalent(tau2, sigma_power(P, P.k), tol)


def is_inversion_closed(roots, eps: float = 1e-8) -> bool:
    """Whether {1/z} matches {z} under nearest pairing."""
    remaining = list(roots)
    for z in roots:
        inv = 1 / z
        best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - inv))
        if abs(remaining[best] - inv) > eps:
            return False
        remaining.pop(best)
    return True


def twist_fixed_candidates(k: int, n: int, t: complex = 1.0,
                           tol: TolerancePolicy = DEFAULT_TOL) -> list[FixedPoint]:
    """sigma_t fixed points whose root set is closed under inversion, each checked to be twist-fixed."""
    out = []
    for fp in enumerate_fixed_points(k, n, t):
        if not is_inversion_closed(fp.roots.roots):
            continue
        residual = projective_distance(twist_point(fp.point, tol=tol), fp.point)
        if residual > 1e-8:
            raise ArithmeticError(f"inversion-closed V_S with roots {fp.roots.indices} not twist-fixed "
                                  f"(residual {residual:.3g})")
        out.append(fp)
    return out
