"""Toeplitz points of the Peterson variety, the embedding gamma, and Schur evaluations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .cyclic_shift import RootSet, v_S
from .errors import CoincidentPoints, InvalidRoots, NonPositiveParameter, ShapeMismatch, ZeroDenominator
from .grassmann import PluckerVector, complement, subsets

COINCIDENCE_EPS = 1e-6


@dataclass(frozen=True)
class Partition:
    """A partition fitting in the k x (n-k) box, stored padded to exactly k parts."""

    parts: tuple[int, ...]
    k: int
    n: int

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if len(parts) > self.k and any(parts[self.k:]):
            raise ShapeMismatch(f"{parts} has more than {self.k} nonzero parts")
        parts = (parts + (0,) * self.k)[: self.k]
        if any(p < 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ShapeMismatch(f"{parts} is not weakly decreasing and nonnegative")
        if parts and parts[0] > self.n - self.k:
            raise ShapeMismatch(f"{parts} does not fit in a {self.k}x{self.n - self.k} box")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def plucker_index(self) -> tuple[int, ...]:
        """{lambda_k + 1, lambda_(k-1) + 2, ..., lambda_1 + k}."""
        k = self.k
        return tuple(self.parts[k - s] + s for s in range(1, k + 1))

    def __str__(self):
        return ",".join(str(p) for p in self.parts)


def partitions_in_box(k: int, n: int) -> list[Partition]:
    """Every element of P_{k,n}, in lexicographic order of the padded parts."""
    out = []

    def grow(prefix, cap):
        if len(prefix) == k:
            out.append(Partition(tuple(prefix), k, n))
            return
        for p in range(cap + 1):
            grow(prefix + [p], p)

    grow([], n - k)
    return sorted(out, key=lambda lam: lam.parts)


def partition_complement(lam: Partition) -> Partition:
    """lambda^vee: parts (n-k-lambda_k, ..., n-k-lambda_1)."""
    m = lam.n - lam.k
    return Partition(tuple(m - p for p in reversed(lam.parts)), lam.k, lam.n)


def elementary_symmetric(j: int, zs: Sequence[complex]) -> complex:
    if j < 0 or j > len(zs):
        return 0j
    # coefficients of prod (1 + z x)
    coeffs = [1 + 0j]
    for z in zs:
        coeffs = [a + z * b for a, b in zip(coeffs + [0j], [0j] + coeffs)]
    return coeffs[j]


@dataclass(frozen=True, eq=False)
class ToeplitzPoint:
    kind: str  # "identity" or "generic"
    k: int
    n: int
    matrix: np.ndarray = field(repr=False)
    zs: Optional[tuple[complex, ...]] = None


def identity_point(k: int, n: int) -> ToeplitzPoint:
    return ToeplitzPoint("identity", k, n, np.eye(n, dtype=complex))


def _check_admissible(zs: Sequence[complex], n: int):
    zs = [complex(z) for z in zs]
    if any(z == 0 for z in zs):
        raise InvalidRoots("roots must be nonzero")
    for a, b in combinations(zs, 2):
        if abs(a - b) <= 1e-10:
            raise InvalidRoots("roots must be distinct")
    if zs:
        w = zs[0] ** n
        for z in zs[1:]:
            if abs(z ** n - w) > 1e-9 * abs(w):
                raise InvalidRoots("roots must have equal n-th powers")
    return zs


def toeplitz_u(k: int, n: int, zs: Sequence[complex]) -> ToeplitzPoint:
    """u_{k,n}(z): upper unitriangular Toeplitz matrix with (r, s) entry e_{s-r}(z)."""
    zs = _check_admissible(zs, n)
    if len(zs) != k:
        raise InvalidRoots(f"expected {k} roots")
    e = [elementary_symmetric(j, zs) for j in range(n)]
    U = np.zeros((n, n), dtype=complex)
    for r in range(n):
        for s in range(r, n):
            U[r, s] = e[s - r]
    return ToeplitzPoint("generic", k, n, U, tuple(zs))


def gamma_embed(g: ToeplitzPoint) -> PluckerVector:
    """D_I = det of g restricted to rows I^c and columns k+1..n."""
    k, n = g.k, g.n
    cols = list(range(k, n))
    coords = []
    for I in subsets(k, n):
        rows = [j - 1 for j in complement(I, n)]
        coords.append(np.linalg.det(g.matrix[np.ix_(rows, cols)]) if rows else 1.0)
    return PluckerVector(k, n, np.array(coords))


def q_value(g: ToeplitzPoint) -> complex:
    if g.kind == "identity":
        return 0j
    return (-1) ** (g.k - 1) * g.zs[0] ** g.n


def _check_distinct(zs):
    for a, b in combinations(zs, 2):
        if abs(a - b) < COINCIDENCE_EPS:
            raise CoincidentPoints(f"points {a} and {b} are closer than {COINCIDENCE_EPS}")


def schur_eval(lam: Partition, zs: Sequence[complex]) -> complex:
    """Bialternant det(z_r^(lambda_(k+1-s) + s - 1)) / det(z_r^(s-1))."""
    zs = np.asarray(zs, dtype=complex)
    k = len(zs)
    if k != lam.k:
        raise ShapeMismatch(f"partition has {lam.k} parts but {k} points were given")
    if k == 0:
        return 1 + 0j
    _check_distinct(zs)
    exps_num = np.array([lam.parts[k - s] + s - 1 for s in range(1, k + 1)])
    num = np.linalg.det(zs[:, None] ** exps_num[None, :])
    den = np.linalg.det(zs[:, None] ** np.arange(k)[None, :])
    return complex(num / den)


def schur_via_plucker(lam: Partition, S: RootSet) -> complex:
    """D_{lambda_k+1, ..., lambda_1+k}(V_S) / D_{1..k}(V_S)."""
    if (lam.k, lam.n) != (S.k, S.n):
        raise ShapeMismatch("partition box and root set disagree on (k, n)")
    P = v_S(S)
    den = P[tuple(range(1, S.k + 1))]
    if abs(den) <= 1e-14:
        raise ZeroDenominator("D_{1..k}(V_S) vanishes")
    return P[lam.plucker_index()] / den


def schur_sine_formula(lam: Partition, t: float = 1.0) -> float:
    """t^(|lambda|/n) prod_{r<s} sin((lambda_r - lambda_s + s - r) pi/n) / sin((s - r) pi/n)."""
    if not (float(t) > 0):
        raise NonPositiveParameter("t must be positive")
    k, n = lam.k, lam.n
    value = float(t) ** (lam.size / n)
    p = lam.parts
    for r in range(k):
        for s in range(r + 1, k):
            value *= math.sin((p[r] - p[s] + s - r) * math.pi / n) / math.sin((s - r) * math.pi / n)
    return value


def is_nonnegative(value: complex, eps: float = 1e-9) -> bool:
    scale = max(1.0, abs(value))
    return value.real >= -eps * scale and abs(value.imag) <= eps * scale


@dataclass
class ModulusReport:
    modulus: float
    bound: float
    holds: bool


def modulus_inequality_check(lam: Partition, zs: Sequence[complex]) -> ModulusReport:
    """|s_lambda(z)| <= s_lambda(S_0) for distinct unit-modulus z with equal n-th powers."""
    zs = _check_admissible(zs, lam.n)
    if abs(abs(zs[0]) - 1) > 1e-9:
        raise InvalidRoots("|z_1| must be 1")
    mod = abs(schur_eval(lam, zs))
    bound = schur_sine_formula(lam, 1.0)
    return ModulusReport(mod, bound, mod <= bound + 1e-9)
