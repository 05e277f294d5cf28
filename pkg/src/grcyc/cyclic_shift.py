"""The deformed cyclic shift sigma_t, its fixed points V_S, and the flow exp(s sigma)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import ArgumentOutOfRange, InvalidRoots, NonPositiveParameter, ZeroInput, ZeroParameter
from .grassmann import (
    DEFAULT_TOL,
    PluckerVector,
    TolerancePolicy,
    matrix_from_plucker,
    minors,
    plucker_from_matrix,
    projective_distance,
    subset_index,
    subsets,
)
from .moment_curve import f_k, v0_matrix


def is_positive_real(t: complex) -> bool:
    t = complex(t)
    return t.real > 0 and abs(t.imag) <= 1e-12 * abs(t)


def shift_constant(k: int, t: complex = 1.0) -> complex:
    """(-1)^(k-1) t, the constant every root of a fixed point satisfies z^n = it."""
    return (-1) ** (k - 1) * complex(t)


@dataclass(frozen=True)
class RootSet:
    """k distinct n-th roots of (-1)^(k-1) t, in the order of the full root list."""

    k: int
    n: int
    t: complex
    roots: tuple[complex, ...]
    indices: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "t", complex(self.t))
        object.__setattr__(self, "roots", tuple(complex(z) for z in self.roots))
        if self.t == 0:
            raise ZeroParameter("t must be nonzero")
        if len(self.roots) != self.k:
            raise InvalidRoots(f"expected {self.k} roots, got {len(self.roots)}")
        w = shift_constant(self.k, self.t)
        for z in self.roots:
            if abs(z ** self.n - w) > 1e-9 * abs(w):
                raise InvalidRoots(f"{z} is not an {self.n}-th root of {w}")
        for a, b in combinations(self.roots, 2):
            if abs(a - b) <= DEFAULT_TOL.zero_eps:
                raise InvalidRoots("roots must be pairwise distinct")

    def to_json(self) -> list[list[float]]:
        return [[z.real, z.imag] for z in self.roots]


class FixedPoint(NamedTuple):
    roots: RootSet
    point: PluckerVector


def sigma_t_matrix(k: int, n: int, t: complex = 1.0) -> np.ndarray:
    """Matrix S with S @ v = (v_2, ..., v_n, (-1)^(k-1) t v_1)."""
    if complex(t) == 0:
        raise ZeroParameter("t must be nonzero")
    S = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        S[i, i + 1] = 1.0
    S[n - 1, 0] = shift_constant(k, t)
    return S


def _rotated_coords(P: PluckerVector, t: complex) -> np.ndarray:
    t = complex(t)
    if t == 0:
        raise ZeroParameter("t must be nonzero")
    k, n = P.k, P.n
    index = subset_index(k, n)
    new = np.empty_like(P.coords)
    for pos, I in enumerate(subsets(k, n)):
        shifted = tuple(sorted(i % n + 1 for i in I))
        new[pos] = P.coords[index[shifted]] * (t if n in I else 1.0)
    return new


def sigma_t_on_plucker(P: PluckerVector, t: complex = 1.0) -> PluckerVector:
    """sigma_t by index rotation: D_I(new) = t^[n in I] D_{I+1}(old), indices mod n."""
    return PluckerVector(P.k, P.n, _rotated_coords(P, t))


def sigma_power(P: PluckerVector, power: int, t: complex = 1.0) -> PluckerVector:
    for _ in range(power):
        P = sigma_t_on_plucker(P, t)
    return P


def fixed_residual(P: PluckerVector, t: complex = 1.0) -> float:
    return projective_distance(sigma_t_on_plucker(P, t), P)


def _root_angles(k: int, n: int, t: complex) -> list[float]:
    w = shift_constant(k, t)
    if w.imag == 0:
        base = 0.0 if w.real > 0 else math.pi
    else:
        base = float(np.angle(w))
    angles = []
    for m in range(n):
        a = (base + 2 * math.pi * m) / n
        while a > math.pi + 1e-12:
            a -= 2 * math.pi
        while a <= -math.pi + 1e-12:
            a += 2 * math.pi
        angles.append(a)
    return sorted(angles)


def all_roots(k: int, n: int, t: complex = 1.0) -> tuple[complex, ...]:
    """The n solutions of z^n = (-1)^(k-1) t sorted by principal argument in (-pi, pi]."""
    t = complex(t)
    if t == 0:
        raise ZeroParameter("t must be nonzero")
    radius = abs(t) ** (1.0 / n)
    return tuple(radius * cmath.exp(1j * a) for a in _root_angles(k, n, t))


def roots_and_s0(k: int, n: int, t: complex = 1.0) -> tuple[tuple[complex, ...], Optional[RootSet]]:
    """All roots, and for real t > 0 the root set t^(1/n) S_0 closest to the positive axis."""
    roots = all_roots(k, n, t)
    if not is_positive_real(t):
        return roots, None
    angles = _root_angles(k, n, t)
    chosen = []
    for m in range(-(k - 1), k, 2):
        target = math.pi * m / n
        chosen.append(min(range(n), key=lambda j: abs(angles[j] - target)))
    chosen.sort()
    return roots, RootSet(k, n, t, tuple(roots[j] for j in chosen), tuple(chosen))


def power_matrix(zs: Sequence[complex], n: int) -> np.ndarray:
    """Rows (1, z, ..., z^(n-1))."""
    zs = np.asarray(zs, dtype=complex)
    return zs[:, None] ** np.arange(n)[None, :]


def v_S(S: RootSet) -> PluckerVector:
    return plucker_from_matrix(power_matrix(S.roots, S.n))


def enumerate_fixed_points(k: int, n: int, t: complex = 1.0) -> list[FixedPoint]:
    """All C(n, k) fixed points of sigma_t, one per k-subset of roots, lexicographic."""
    roots = all_roots(k, n, t)
    out = []
    for J in combinations(range(n), k):
        S = RootSet(k, n, t, tuple(roots[j] for j in J), J)
        out.append(FixedPoint(S, v_S(S)))
    return out


def deformed_plucker_formula(k: int, n: int, t: float, I: Sequence[int]) -> float:
    """t^(sum I / n) prod_{r<s} sin((i_s - i_r) pi / n)."""
    I = sorted(I)
    value = float(t) ** (sum(I) / n)
    for r in range(k):
        for s in range(r + 1, k):
            value *= math.sin((I[s] - I[r]) * math.pi / n)
    return value


def tnn_fixed_point(k: int, n: int, t: float = 1.0) -> PluckerVector:
    """The totally nonnegative fixed point of sigma_t: V_0 with coordinate j rescaled by t^(j/n)."""
    if not is_positive_real(t):
        raise NonPositiveParameter(f"t must be real and positive, got {t}")
    t = complex(t).real
    scales = t ** (np.arange(1, n + 1) / n)
    return plucker_from_matrix(v0_matrix(k, n) * scales[None, :])


def shift_eigenvalue(P: PluckerVector, t: complex = 1.0) -> complex:
    """The scalar by which sigma_t acts on the Plücker vector of a fixed point."""
    rotated = _rotated_coords(P, t)
    pivot = int(np.argmax(np.abs(P.coords)))
    return complex(rotated[pivot] / P.coords[pivot])


def remark_matrix(z: complex, k: int, n: int) -> np.ndarray:
    """A totally nonnegative k x n matrix whose row span contains (1, z, ..., z^(n-1)).

    Needs |arg z| <= (k-1) pi / (n-1).  Columns f_k(j rho), rho = 2|arg z|/(k-1),
    or the power matrix (s^(r-1)) when arg z = 0; column j then carries |z|^j.
    """
    z = complex(z)
    if z == 0:
        raise ZeroInput("z must be nonzero")
    alpha = abs(float(np.angle(z)))
    bound = (k - 1) * math.pi / (n - 1) if n > 1 else 0.0
    if alpha > bound + 1e-12:
        raise ArgumentOutOfRange(f"|arg z| = {alpha} exceeds {bound}")
    if alpha <= 1e-15 or k == 1:
        A = np.array([[float(s) ** r for s in range(1, n + 1)] for r in range(k)])
    else:
        rho = 2 * alpha / (k - 1)
        A = np.column_stack([f_k(k, j * rho) for j in range(n)])
    return A * (abs(z) ** np.arange(n))[None, :]


def remark_subspace(z: complex, k: int, n: int) -> PluckerVector:
    return plucker_from_matrix(remark_matrix(z, k, n))


@lru_cache(maxsize=None)
def _flow_basis(k: int, n: int):
    roots = np.array(all_roots(k, n, 1.0))
    Ft = power_matrix(roots, n)  # row m is the eigenvector for roots[m]
    J = np.array(subsets(k, n)) - 1
    G = np.array([minors(Ft[list(Jrow), :]) for Jrow in J])
    eig_sums = roots[J].sum(axis=1)
    G.setflags(write=False)
    return Ft, G, eig_sums


def flow(P: PluckerVector, s: float) -> PluckerVector:
    """Row-span image of P under exp(s sigma), sigma = sigma_1 for this k.

    The eigenvectors (1, z, ..., z^(n-1)) over the n roots of (-1)^(k-1) are
    orthogonal, so P is expanded in eigen-coordinates, each k-subset J of
    eigenvalues picks up exp(s * sum_J z) exactly, and the result is
    reassembled by Cauchy-Binet.
    """
    if s < 0:
        raise ValueError("flow time must be nonnegative")
    k, n = P.k, P.n
    Ft, G, eig_sums = _flow_basis(k, n)
    A = matrix_from_plucker(P)
    B = A @ np.conj(Ft.T) / n
    dB = minors(B)
    mod = np.abs(dB)
    live = mod > 0
    logw = np.full(mod.shape, -np.inf)
    logw[live] = np.log(mod[live]) + s * eig_sums[live].real
    shift = logw.max()
    w = np.zeros_like(dB)
    w[live] = dB[live] / mod[live] * np.exp(logw[live] - shift + 1j * s * eig_sums[live].imag)
    return PluckerVector(k, n, w @ G)
