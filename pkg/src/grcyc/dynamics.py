"""Promotion on rectangular semistandard tableaux and birational rowmotion on [k]x[n-k]."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .errors import DegenerateToggle, InvalidTableau, ZeroParameter
from .grassmann import DEFAULT_TOL, TolerancePolicy
from .superpotential import TorusPoint, find_critical_points, poset_elements, torus_distance


@dataclass(frozen=True)
class Tableau:
    """A rectangular semistandard tableau, rows weakly and columns strictly increasing."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise InvalidTableau("empty tableau")
        if any(len(r) != len(rows[0]) for r in rows):
            raise InvalidTableau("rows have different lengths")
        for r in rows:
            if any(a > b for a, b in zip(r, r[1:])):
                raise InvalidTableau(f"row {list(r)} is not weakly increasing")
        for upper, lower in zip(rows, rows[1:]):
            if any(a >= b for a, b in zip(upper, lower)):
                raise InvalidTableau("columns are not strictly increasing")
        if min(rows[0]) < 1:
            raise InvalidTableau("entries must be positive")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def max_entry(self) -> int:
        return self.rows[-1][-1]

    def to_json(self, n: Optional[int] = None) -> dict:
        out: dict = {"rows": [list(r) for r in self.rows]}
        if n is not None:
            out["n"] = n
        return out

    def __str__(self):
        return "/".join(" ".join(map(str, r)) for r in self.rows)


def _check_bound(T: Tableau, n: int):
    if T.max_entry > n:
        raise InvalidTableau(f"entry {T.max_entry} exceeds n = {n}")


def promotion(T: Tableau, n: int) -> Tableau:
    """Remove the 1s, decrement, slide the holes out by jeu de taquin and fill with n.

    Holes are processed right to left.  A hole moves into the smaller of its
    east and south neighbours, preferring south on a tie.
    """
    _check_bound(T, n)
    a, b = T.shape
    grid: list[list[Optional[int]]] = [[None if x == 1 else x - 1 for x in row] for row in T.rows]
    holes = [j for j in range(b) if grid[0][j] is None]
    for j0 in reversed(holes):
        i, j = 0, j0
        while True:
            east = grid[i][j + 1] if j + 1 < b else None
            south = grid[i + 1][j] if i + 1 < a else None
            if east is None and south is None:
                break
            if south is not None and (east is None or south <= east):
                grid[i][j], i = south, i + 1
            else:
                grid[i][j], j = east, j + 1
            grid[i][j] = None
        grid[i][j] = n
    return Tableau(tuple(tuple(r) for r in grid))  # type: ignore[arg-type]


def promotion_order(T: Tableau, n: int, check: bool = True) -> int:
    """Least p >= 1 with pr^p(T) = T.  For rectangles p divides n; ``check`` asserts it."""
    _check_bound(T, n)
    S, p = promotion(T, n), 1
    while S != T:
        S, p = promotion(S, n), p + 1
        if p > n * n + 1:
            raise ArithmeticError("promotion orbit did not close")
    if check and n % p:
        raise ArithmeticError(f"promotion order {p} does not divide {n}")
    return p


def promotion_orbit(T: Tableau, n: int) -> list[Tableau]:
    out = [T]
    for _ in range(promotion_order(T, n, check=False) - 1):
        out.append(promotion(out[-1], n))
    return out


def semistandard_tableaux(rows: int, cols: int, n: int) -> Iterator[Tableau]:
    """All rows x cols semistandard tableaux with entries in 1..n, filled row by row."""
    cells = [(i, j) for i in range(rows) for j in range(cols)]
    grid = [[0] * cols for _ in range(rows)]

    def fill(pos):
        if pos == len(cells):
            yield Tableau(tuple(tuple(r) for r in grid))
            return
        i, j = cells[pos]
        lo = max(grid[i][j - 1] if j else 1, grid[i - 1][j] + 1 if i else 1)
        for v in range(lo, n - (rows - 1 - i) + 1):
            grid[i][j] = v
            yield from fill(pos + 1)

    yield from fill(0)


@dataclass(frozen=True)
class PosetLabeling:
    """Nonzero labels on [k]x[n-k]; the added bottom carries 1 and the added top carries q."""

    k: int
    n: int
    values: Mapping[tuple[int, int], complex]
    q: complex = 1.0

    def __post_init__(self):
        elems = poset_elements(self.k, self.n)
        if set(self.values) != set(elems):
            raise ValueError(f"labels must cover exactly [{self.k}]x[{self.n - self.k}]")
        vals = {v: complex(self.values[v]) for v in elems}
        if any(z == 0 for z in vals.values()):
            raise ValueError("labels must be nonzero")
        if complex(self.q) == 0:
            raise ZeroParameter("q must be nonzero")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "q", complex(self.q))

    @classmethod
    def from_array(cls, k: int, n: int, x: Sequence[complex], q: complex = 1.0) -> "PosetLabeling":
        return cls(k, n, dict(zip(poset_elements(k, n), x)), q)

    @classmethod
    def from_torus(cls, x: TorusPoint, q: complex = 1.0) -> "PosetLabeling":
        return cls.from_array(x.k, x.n, x.values, q)

    def as_array(self) -> np.ndarray:
        return np.array([self.values[v] for v in poset_elements(self.k, self.n)])

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "q": [self.q.real, self.q.imag],
            "labels": {f"{r},{s}": [z.real, z.imag] for (r, s), z in self.values.items()},
        }


def _neighbours(k: int, n: int, r: int, s: int):
    below = [(r - 1, s)] if r > 1 else []
    below += [(r, s - 1)] if s > 1 else []
    above = [(r + 1, s)] if r < k else []
    above += [(r, s + 1)] if s < n - k else []
    return below, above


def toggle_order(k: int, n: int) -> list[tuple[int, int]]:
    """Reverse lexicographic order, a linear extension read from the top down."""
    return list(reversed(poset_elements(k, n)))


def birational_rowmotion(x: PosetLabeling, tol: TolerancePolicy = DEFAULT_TOL) -> PosetLabeling:
    """Toggle every element from the top down.

    The toggle at v sets f(v) = (sum of f over upper covers) / (f(v) * sum of 1/f over lower covers),
    the bottom counting as 1 and the top as q.  Its fixed points are exactly the
    critical points of L_q = sum over covers of f(upper)/f(lower).
    """
    k, n = x.k, x.n
    f = dict(x.values)
    for r, s in toggle_order(k, n):
        below, above = _neighbours(k, n, r, s)
        up = sum((f[w] for w in above), 0j) + (x.q if (r, s) == (k, n - k) else 0)
        down = sum((1 / f[u] for u in below), 0j) + (1 if (r, s) == (1, 1) else 0)
        scale = max(1.0, abs(f[(r, s)]))
        if abs(up) <= tol.zero_eps * scale or abs(down) <= tol.zero_eps / scale:
            raise DegenerateToggle(f"vanishing neighbour sum at ({r},{s})")
        f[(r, s)] = up / (f[(r, s)] * down)
    return PosetLabeling(k, n, f, x.q)


def rowmotion_residual(x: PosetLabeling) -> float:
    """Max per-coordinate |R(x) - x| relative to max(1, |x|)."""
    a, b = birational_rowmotion(x).as_array(), x.as_array()
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


def rowmotion_order(x: PosetLabeling, max_order: int = 200, eps: float = 1e-8) -> Optional[int]:
    """Least p with R^p(x) = x to eps per coordinate, or None if none up to max_order."""
    start, y = x.as_array(), x
    for p in range(1, max_order + 1):
        y = birational_rowmotion(y)
        if np.max(np.abs(y.as_array() - start) / np.maximum(1.0, np.abs(start))) <= eps:
            return p
    return None


def _newton_fixed(x0: np.ndarray, k: int, n: int, q: complex, target: float = 1e-11,
                  max_iter: int = 60, halvings: int = 20) -> Optional[np.ndarray]:
    """Damped Newton on R(x) - x with a central finite-difference Jacobian."""
    def G(x):
        try:
            return birational_rowmotion(PosetLabeling.from_array(k, n, x, q)).as_array() - x
        except (DegenerateToggle, ValueError, ZeroDivisionError):
            return None

    x = x0.astype(complex)
    with np.errstate(all="ignore"):
        g = G(x)
        if g is None:
            return None
        V = x.size
        for _ in range(max_iter):
            gnorm = np.linalg.norm(g)
            if gnorm < target * max(1.0, np.abs(x).max()):
                return x
            J = np.empty((V, V), dtype=complex)
            for c in range(V):
                h = 1e-7 * max(1.0, abs(x[c]))
                e = np.zeros(V, dtype=complex)
                e[c] = h
                gp, gm = G(x + e), G(x - e)
                if gp is None or gm is None:
                    return None
                J[:, c] = (gp - gm) / (2 * h)
            try:
                step = np.linalg.solve(J, -g)
            except np.linalg.LinAlgError:
                return None
            lam = 1.0
            for _ in range(halvings + 1):
                trial = x + lam * step
                g2 = G(trial) if np.all(np.isfinite(trial)) else None
                if g2 is not None and np.all(np.isfinite(g2)) and np.linalg.norm(g2) < gnorm:
                    x, g = trial, g2
                    break
                lam /= 2
            else:
                break
        if np.linalg.norm(g) < 1e-9 * max(1.0, np.abs(x).max()):
            return x
    return None


@dataclass
class RowmotionReport:
    k: int
    n: int
    q: complex
    critical_points: int
    max_fixed_residual: float
    newton_starts: int
    newton_converged: int
    unmatched: int
    unmatched_points: list[list[list[float]]] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.max_fixed_residual < 1e-8 and self.unmatched == 0

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "q": [self.q.real, self.q.imag],
            "critical_points": self.critical_points,
            "max_fixed_residual": self.max_fixed_residual,
            "newton_starts": self.newton_starts, "newton_converged": self.newton_converged,
            "unmatched": self.unmatched, "passed": self.passed,
        }


def rowmotion_fixed_check(k: int, n: int, q: complex = 1.0, starts: int = 50, seed: int = 0,
                          radius: float = 1e-6) -> RowmotionReport:
    """Critical points of L_q are rowmotion-fixed, and Newton on R(x) - x finds nothing else."""
    q = complex(q)
    if q == 0:
        raise ZeroParameter("q must be nonzero")
    crit = find_critical_points(k, n, q, seed=seed).points
    worst = 0.0
    for p in crit:
        worst = max(worst, rowmotion_residual(PosetLabeling.from_torus(p, q)))
    rng = np.random.default_rng(seed)
    V = k * (n - k)
    converged, unmatched = 0, []
    for _ in range(starts):
        x0 = np.exp(rng.uniform(-1.0, 1.0, V) + 1j * rng.uniform(-math.pi, math.pi, V))
        x = _newton_fixed(x0, k, n, q)
        if x is None or np.any(np.abs(x) <= DEFAULT_TOL.zero_eps):
            continue
        converged += 1
        point = TorusPoint(k, n, tuple(x))
        if all(torus_distance(point, c) > radius for c in crit):
            unmatched.append([[z.real, z.imag] for z in x])
    return RowmotionReport(k, n, q, len(crit), worst, starts, converged, len(unmatched), unmatched)
