"""Trigonometric and symmetric moment curves and the totally positive point V_0."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import GrcycError, ShapeMismatch
from .grassmann import PluckerVector, subsets


def f_k(k: int, theta: float) -> np.ndarray:
    """Point on the moment curve in R^k.

    Odd k:  (1, cos t, sin t, ..., cos((k-1)t/2), sin((k-1)t/2))
    Even k: (cos(t/2), sin(t/2), cos(3t/2), sin(3t/2), ..., sin((k-1)t/2))
    """
    if k < 0:
        raise GrcycError("k must be nonnegative")
    out = np.empty(k)
    if k % 2:
        out[0] = 1.0
        freqs = range(1, (k - 1) // 2 + 1)
        pos = 1
    else:
        freqs = [m + 0.5 for m in range(k // 2)]
        pos = 0
    for w in freqs:
        out[pos] = math.cos(w * theta)
        out[pos + 1] = math.sin(w * theta)
        pos += 2
    return out


def trig_vandermonde_formula(thetas: Sequence[float]) -> float:
    k = len(thetas)
    value = float(2 ** (((k - 1) ** 2) // 2)) if k else 1.0
    for r in range(k):
        for s in range(r + 1, k):
            value *= math.sin((thetas[s] - thetas[r]) / 2)
    return value


def trig_vandermonde_det(thetas: Sequence[float], check: bool = True) -> float:
    """det(f_k(theta_1), ..., f_k(theta_k)) via the closed sine-product form.

    With ``check`` the literal k x k determinant is computed as well and the
    two must agree to 1e-9 relative to the leading power of two.
    """
    thetas = [float(t) for t in thetas]
    k = len(thetas)
    value = trig_vandermonde_formula(thetas)
    if check and k:
        direct = float(np.linalg.det(np.column_stack([f_k(k, t) for t in thetas])))
        scale = 2.0 ** (((k - 1) ** 2) // 2)
        if abs(direct - value) > 1e-9 * scale:
            raise ArithmeticError(f"sine-product form {value} disagrees with determinant {direct}")
    return value


def v0_matrix(k: int, n: int, theta: float = 0.0) -> np.ndarray:
    """k x n matrix with columns f_k(theta + 2 pi j / n), j = 1..n."""
    if not 1 <= k <= n:
        raise ShapeMismatch(f"need 1 <= k <= n, got ({k}, {n})")
    return np.column_stack([f_k(k, theta + 2 * math.pi * j / n) for j in range(1, n + 1)])


def v0_plucker_formula(k: int, n: int, I: Sequence[int]) -> float:
    """D_I(V_0) = prod_{r<s} sin((i_s - i_r) pi / n); only k < n is supported."""
    if not 1 <= k < n:
        raise ShapeMismatch(f"the sine-product form needs 1 <= k < n, got ({k}, {n})")
    I = sorted(I)
    if len(I) != k or len(set(I)) != k or I[0] < 1 or I[-1] > n:
        raise ShapeMismatch(f"{I} is not a {k}-subset of 1..{n}")
    value = 1.0
    for r in range(k):
        for s in range(r + 1, k):
            value *= math.sin((I[s] - I[r]) * math.pi / n)
    return value


def v0_point(k: int, n: int) -> PluckerVector:
    """V_0 built directly from the sine-product coordinates."""
    if k == n:
        return PluckerVector(k, n, np.ones(1))
    return PluckerVector(k, n, np.array([v0_plucker_formula(k, n, I) for I in subsets(k, n)]))
