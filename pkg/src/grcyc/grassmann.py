"""Plücker-coordinate data model for points of the Grassmannian Gr(k, n).

A point is stored as the vector of its k x k minors, indexed by k-subsets of
{1, ..., n} in lexicographic order and kept in canonical projective form (the
coordinate of largest modulus is 1).  All arithmetic is complex binary64.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import GrcycError, RankDeficient, ShapeMismatch, SingularMap, ZeroCoordinate


@dataclass(frozen=True)
class TolerancePolicy:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9
    zero_eps: float = 1e-10

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0 and self.zero_eps > 0):
            raise GrcycError("tolerances must be strictly positive")


DEFAULT_TOL = TolerancePolicy()

# relative window inside which two moduli count as tied when picking the pivot
_TIE_WINDOW = 1e-9


@lru_cache(maxsize=None)
def subsets(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """All k-subsets of {1..n} as sorted 1-based tuples, lexicographic order."""
    if not 0 <= k <= n:
        raise ShapeMismatch(f"need 0 <= k <= n, got k={k}, n={n}")
    return tuple(combinations(range(1, n + 1), k))


@lru_cache(maxsize=None)
def subset_index(k: int, n: int) -> dict[tuple[int, ...], int]:
    return {I: i for i, I in enumerate(subsets(k, n))}


@lru_cache(maxsize=None)
def _zero_based_index_array(k: int, n: int) -> np.ndarray:
    arr = np.array(subsets(k, n), dtype=int).reshape(-1, k) - 1
    arr.setflags(write=False)
    return arr


def format_subset(I: Iterable[int]) -> str:
    return ",".join(str(i) for i in I)


def parse_subset(s: Union[str, Iterable[int]]) -> tuple[int, ...]:
    if isinstance(s, str):
        s = s.strip()
        return tuple(int(tok) for tok in s.split(",")) if s else ()
    return tuple(int(i) for i in s)


def complement(I: Iterable[int], n: int) -> tuple[int, ...]:
    members = set(I)
    return tuple(j for j in range(1, n + 1) if j not in members)


def cyclic_interval(start: int, length: int, n: int) -> tuple[int, ...]:
    """Sorted set {start, start+1, ..., start+length-1} with indices taken mod n in 1..n."""
    return tuple(sorted({(start - 1 + a) % n + 1 for a in range(length)}))


def _permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _canonicalize(coords: np.ndarray) -> np.ndarray:
    mod = np.abs(coords)
    top = mod.max()
    pivot = int(np.flatnonzero(mod >= top * (1.0 - _TIE_WINDOW))[0])
    out = coords / coords[pivot]
    out[pivot] = 1.0
    return out


@dataclass(frozen=True, eq=False)
class PluckerVector:
    """A point of Gr(k, n) given by its projective Plücker coordinates.

    ``coords`` is always stored in canonical form: divided by the coordinate of
    maximum modulus (lexicographically first subset among ties).
    """

    k: int
    n: int
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=complex).reshape(-1)
        expected = math.comb(self.n, self.k)
        if c.size != expected:
            raise ShapeMismatch(f"Gr({self.k},{self.n}) needs {expected} coordinates, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise GrcycError("Plücker coordinates must be finite")
        if not np.any(c != 0):
            raise RankDeficient("Plücker vector is identically zero")
        c = _canonicalize(c)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @classmethod
    def from_mapping(cls, k: int, n: int, values: Mapping) -> "PluckerVector":
        """Build from a (possibly partial) map subset -> value; missing subsets are zero."""
        index = subset_index(k, n)
        c = np.zeros(len(index), dtype=complex)
        for key, val in values.items():
            I = tuple(sorted(parse_subset(key)))
            if I not in index:
                raise ShapeMismatch(f"subset {I} is not a {k}-subset of 1..{n}")
            c[index[I]] = complex(val)
        return cls(k, n, c)

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return subsets(self.k, self.n)

    def __getitem__(self, I) -> complex:
        key = tuple(sorted(parse_subset(I)))
        return complex(self.coords[subset_index(self.k, self.n)[key]])

    def coordinate(self, seq: Sequence[int]) -> complex:
        """Signed coordinate for an arbitrary (unsorted) index sequence; 0 on repeats."""
        if len(set(seq)) < len(seq):
            return 0j
        return _permutation_sign(seq) * self[tuple(sorted(seq))]

    def items(self):
        return zip(self.subsets, self.coords)

    def as_dict(self) -> dict[str, complex]:
        return {format_subset(I): complex(c) for I, c in self.items()}

    def to_json(self) -> dict[str, list[float]]:
        return {format_subset(I): [float(c.real), float(c.imag)] for I, c in self.items()}

    def support(self, eps: float = DEFAULT_TOL.zero_eps) -> list[tuple[int, ...]]:
        return [I for I, c in self.items() if abs(c) > eps]

    def __repr__(self):
        return f"PluckerVector(k={self.k}, n={self.n}, coords={np.array2string(self.coords, precision=4)})"


def as_matrix(A) -> np.ndarray:
    M = np.array(A, dtype=complex)
    if M.ndim != 2:
        raise ShapeMismatch("expected a 2-d matrix")
    if not np.all(np.isfinite(M)):
        raise GrcycError("matrix entries must be finite")
    return M


def minors(A) -> np.ndarray:
    """Raw maximal minors of a k x n matrix, in lexicographic subset order."""
    A = as_matrix(A)
    k, n = A.shape
    if k > n:
        raise ShapeMismatch(f"k={k} exceeds n={n}")
    if k == 0:
        return np.ones(1, dtype=complex)
    idx = _zero_based_index_array(k, n)
    blocks = np.transpose(A[:, idx], (1, 0, 2))
    return np.linalg.det(blocks)


def plucker_from_matrix(A, tol: TolerancePolicy = DEFAULT_TOL) -> PluckerVector:
    A = as_matrix(A)
    k, n = A.shape
    raw = minors(A)
    scale = float(np.prod(np.linalg.norm(A, axis=1))) if k else 1.0
    if scale == 0.0 or np.abs(raw).max() < tol.zero_eps * scale:
        raise RankDeficient(f"matrix of shape {A.shape} does not have rank {k}")
    return PluckerVector(k, n, raw)


def matrix_from_plucker(P: PluckerVector) -> np.ndarray:
    """A k x n representative with the identity in the columns of the largest coordinate."""
    k, n = P.k, P.n
    pivot = int(np.argmax(np.abs(P.coords)))
    I0 = P.subsets[pivot]
    base = P.coords[pivot]
    A = np.zeros((k, n), dtype=complex)
    for r in range(k):
        for j in range(1, n + 1):
            seq = list(I0)
            seq[r] = j
            A[r, j - 1] = P.coordinate(seq) / base
    return A


def plucker_relation_residual(P: PluckerVector) -> float:
    """Largest violation of the three-term relations D(Sac)D(Sbd) = D(Sab)D(Scd) + D(Sad)D(Sbc)."""
    k, n = P.k, P.n
    if k < 2 or n - k < 2:
        return 0.0
    worst = 0.0
    for S in combinations(range(1, n + 1), k - 2):
        rest = complement(S, n)
        for a, b, c, d in combinations(rest, 4):
            def D(x, y):
                return P[S + (x, y)]
            lhs = D(a, c) * D(b, d)
            rhs = D(a, b) * D(c, d) + D(a, d) * D(b, c)
            worst = max(worst, abs(lhs - rhs))
    return worst


def projective_distance(P: PluckerVector, Q: PluckerVector) -> float:
    """Max coordinate deviation after scaling both to unit max modulus and aligning phase.

    The phase is the least-squares optimum, so the value is an upper bound on
    the min-over-phase distance.
    """
    _check_shapes(P, Q)
    p = P.coords / np.abs(P.coords).max()
    q = Q.coords / np.abs(Q.coords).max()
    inner = np.vdot(q, p)
    phase = inner / abs(inner) if abs(inner) > 0 else 1.0
    return float(np.abs(p - phase * q).max())


def projective_equal(P: PluckerVector, Q: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    return projective_distance(P, Q) <= tol.abs_eps + tol.rel_eps


def _check_shapes(P: PluckerVector, Q: PluckerVector):
    if (P.k, P.n) != (Q.k, Q.n):
        raise ShapeMismatch(f"Gr({P.k},{P.n}) vs Gr({Q.k},{Q.n})")


def orthogonal_complement(P: PluckerVector) -> PluckerVector:
    """The point W of Gr(n-k, n) with D_I(P) = D_{I^c}(W), orthogonal under sum (-1)^(j-1) v_j w_j."""
    k, n = P.k, P.n
    index = subset_index(k, n)
    coords = [P.coords[index[complement(J, n)]] for J in subsets(n - k, n)]
    return PluckerVector(n - k, n, np.array(coords))


def complement_matrix(A) -> np.ndarray:
    """Rows spanning the alternating-form orthogonal complement of the row span of A."""
    A = as_matrix(A)
    k, n = A.shape
    signs = np.array([(-1) ** j for j in range(n)], dtype=float)
    _, _, vh = np.linalg.svd(A * signs, full_matrices=True)
    return vh[k:].conj()


def integer_left_kernel(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Z-basis of {a : a M = 0} via unimodular integer row reduction of [M | I]."""
    m = len(M)
    ncols = len(M[0]) if m else 0
    rows = [list(map(int, r)) + [1 if i == j else 0 for j in range(m)] for i, r in enumerate(M)]
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= m:
            break
        while True:
            nz = [i for i in range(pivot_row, m) if rows[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pivot_row], rows[best] = rows[best], rows[pivot_row]
            lead = rows[pivot_row][col]
            clean = True
            for i in range(pivot_row + 1, m):
                if rows[i][col]:
                    q = rows[i][col] // lead
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
                    if rows[i][col]:
                        clean = False
            if clean:
                pivot_row += 1
                break
    return [r[ncols:] for r in rows[pivot_row:]]


@lru_cache(maxsize=None)
def torus_invariant_exponents(k: int, n: int) -> np.ndarray:
    """Exponent vectors of Laurent monomials in the Plücker coordinates that are
    invariant under column rescaling and global scaling, as an integer matrix."""
    weight = [[1 if j in I else 0 for j in range(1, n + 1)] + [1] for I in subsets(k, n)]
    basis = integer_left_kernel(weight)
    out = np.array(basis, dtype=np.int64).reshape(-1, math.comb(n, k))
    out.setflags(write=False)
    return out


def torus_equivalent(P: PluckerVector, Q: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Whether P and Q lie in one orbit of the column-rescaling torus (both nowhere zero)."""
    _check_shapes(P, Q)
    for name, X in (("first", P), ("second", Q)):
        if np.abs(X.coords).min() <= tol.zero_eps:
            raise ZeroCoordinate(f"{name} point has a coordinate below {tol.zero_eps}")
    E = torus_invariant_exponents(P.k, P.n)
    if E.shape[0] == 0:
        return True
    logs = np.log(P.coords / Q.coords)
    vals = E @ logs
    wrapped = np.mod(vals.imag + math.pi, 2 * math.pi) - math.pi
    resid = np.hypot(vals.real, wrapped)
    thresh = 10 * tol.abs_eps * (1 + np.abs(E).sum(axis=1))
    return bool(np.all(resid <= thresh))


def rescale_columns(P: PluckerVector, scales: Sequence[complex]) -> PluckerVector:
    """Torus action on Plücker coordinates: D_I is multiplied by the product of scales over I."""
    s = np.asarray(scales, dtype=complex)
    if s.shape != (P.n,):
        raise ShapeMismatch("need one scale per column")
    factors = np.array([np.prod(s[list(np.array(I) - 1)]) for I in P.subsets])
    return PluckerVector(P.k, P.n, P.coords * factors)


def apply_row_span_map(M, X, tol: TolerancePolicy = DEFAULT_TOL) -> PluckerVector:
    """Image of a point (PluckerVector or k x n matrix) under v -> M v, i.e. A -> A M^T."""
    M = as_matrix(M)
    A = matrix_from_plucker(X) if isinstance(X, PluckerVector) else as_matrix(X)
    n = A.shape[1]
    if M.shape != (n, n):
        raise ShapeMismatch(f"map must be {n}x{n}")
    if abs(np.linalg.det(M)) <= tol.zero_eps:
        raise SingularMap("row-span map is singular")
    return plucker_from_matrix(A @ M.T, tol)


def random_matrix(k: int, n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))


def random_point(k: int, n: int, rng: np.random.Generator) -> PluckerVector:
    return plucker_from_matrix(random_matrix(k, n, rng))
