"""Sign variation, total nonnegativity tests and the sampled Gantmakher-Krein check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import NotRealizable, ZeroInput
from .grassmann import DEFAULT_TOL, PluckerVector, TolerancePolicy, matrix_from_plucker
from .moment_curve import f_k


def sign_variation(v: Sequence[float], zero_eps: float = 1e-10) -> int:
    """Number of sign changes in v, ignoring entries below zero_eps * max|v|."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        return 0
    cutoff = zero_eps * np.abs(v).max()
    signs = np.sign(v[np.abs(v) > cutoff])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def realize_real(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Real Plücker vector of P, or NotRealizable if no global phase makes it real."""
    # canonical form already puts the max-modulus coordinate at +1
    c = P.coords
    if np.abs(c.imag).max() > tol.abs_eps:
        raise NotRealizable(f"coordinate with imaginary part {np.abs(c.imag).max():.3g} after phase removal")
    return c.real.copy()


def is_tnn(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    try:
        x = realize_real(P, tol)
    except NotRealizable:
        return False
    return bool(np.all(x >= -tol.abs_eps) or np.all(x <= tol.abs_eps))


def is_tp(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    try:
        x = realize_real(P, tol)
    except NotRealizable:
        return False
    return bool(np.all(x > tol.abs_eps) or np.all(x < -tol.abs_eps))


@dataclass
class GKReport:
    samples: int
    max_variation: int
    bound: int
    passed: bool
    witness: Optional[list[float]] = None
    witness_vector: Optional[list[float]] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "max_variation": self.max_variation,
            "bound": self.bound,
            "passed": self.passed,
            "witness": self.witness,
        }


def real_representative(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    x = realize_real(P, tol)
    return matrix_from_plucker(PluckerVector(P.k, P.n, x)).real


def gk_sample_check(P: PluckerVector, samples: int = 1000, seed: int = 0,
                    tol: TolerancePolicy = DEFAULT_TOL) -> GKReport:
    """Sample random real vectors of P and compare their sign variation with k - 1.

    Passing is only a necessary condition for total nonnegativity; a failure
    comes with a witness coefficient vector and certifies P is not TNN.
    """
    A = real_representative(P, tol)
    k = P.k
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal((samples, k))
    worst, witness, witness_vec = 0, None, None
    for c in coeffs:
        v = c @ A
        var = sign_variation(v, tol.zero_eps)
        if var > worst:
            worst = var
            if var > k - 1 and witness is None:
                witness, witness_vec = c.tolist(), v.tolist()
    return GKReport(samples, worst, k - 1, worst <= k - 1, witness, witness_vec)


def argument_bound_holds(z: complex, k: int, n: int) -> bool:
    """|arg z| <= (k-1) pi / (n-1), the constraint on any power vector inside a TNN point."""
    z = complex(z)
    if z == 0:
        raise ZeroInput("z must be nonzero")
    if n <= 1:
        return True
    return abs(float(np.angle(z))) <= (k - 1) * math.pi / (n - 1) + 1e-12


def random_tnn_matrix(k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """A random totally positive k x n matrix.

    Half the time columns are f_k at sorted angles spanning less than 2 pi,
    otherwise a Vandermonde matrix on increasing positive nodes; columns then
    get random positive weights.
    """
    if rng.random() < 0.5:
        thetas = np.sort(rng.uniform(0.0, 2 * math.pi, n))
        A = np.column_stack([f_k(k, th) for th in thetas])
    else:
        nodes = np.sort(rng.uniform(0.2, 2.0, n))
        A = nodes[None, :] ** np.arange(k)[:, None]
    return A * rng.uniform(0.5, 2.0, n)[None, :]
