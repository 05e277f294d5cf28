"""The superpotential F_q on Plücker data, its Laurent form L_q, and critical points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Optional, Sequence

import numpy as np

from .cyclic_shift import enumerate_fixed_points
from .errors import ChartUndefined, OutsidePiCircle, ZeroParameter
from .grassmann import DEFAULT_TOL, PluckerVector, TolerancePolicy, cyclic_interval, format_subset


def variable_name(v: Hashable) -> str:
    if isinstance(v, tuple):
        return f"x{v[0]},{v[1]}"
    return str(v)


class LaurentPolynomial:
    """Finite sum of coefficient * monomial with integer (possibly negative) exponents."""

    def __init__(self, variables: Sequence[Hashable], terms):
        self.variables = tuple(variables)
        merged: dict[tuple[int, ...], complex] = {}
        for coeff, exps in terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise ValueError("exponent vector length does not match the variables")
            merged[exps] = merged.get(exps, 0) + complex(coeff)
        self.terms = tuple((merged[e], e) for e in sorted(merged) if merged[e] != 0)
        self._coeffs = np.array([c for c, _ in self.terms], dtype=complex)
        self._exps = np.array([e for _, e in self.terms], dtype=np.int64).reshape(-1, len(self.variables))

    def __len__(self):
        return len(self.terms)

    def __call__(self, values: Sequence[complex]) -> complex:
        x = np.asarray(values, dtype=complex)
        if not len(self.terms):
            return 0j
        return complex(np.sum(self._coeffs * np.prod(x[None, :] ** self._exps, axis=1)))

    def derivative(self, var: Hashable) -> "LaurentPolynomial":
        j = self.variables.index(var)
        out = []
        for c, e in self.terms:
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                out.append((c * e[j], e2))
        return LaurentPolynomial(self.variables, out)

    def gradient_hessian(self, values: Sequence[complex], wrt: Sequence[int]):
        """Exact gradient and Hessian with respect to the variable positions ``wrt``."""
        x = np.asarray(values, dtype=complex)
        mono = self._coeffs * np.prod(x[None, :] ** self._exps, axis=1)
        E = self._exps[:, list(wrt)].astype(float)
        xw = x[list(wrt)]
        grad = (E * mono[:, None]).sum(axis=0) / xw
        H = np.einsum("tu,tv,t->uv", E, E, mono) - np.diag((E * mono[:, None]).sum(axis=0))
        H = H / np.outer(xw, xw)
        return grad, H

    def __str__(self):
        parts = []
        for c, e in self.terms:
            num = [variable_name(v) + (f"^{p}" if p > 1 else "") for v, p in zip(self.variables, e) if p > 0]
            den = [variable_name(v) + (f"^{-p}" if p < -1 else "") for v, p in zip(self.variables, e) if p < 0]
            body = "*".join(num) or "1"
            if den:
                body += "/" + "/".join(den)
            coeff = "" if c == 1 else f"({c})*"
            parts.append(coeff + body)
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"LaurentPolynomial({self})"


def poset_elements(k: int, n: int) -> list[tuple[int, int]]:
    return [(r, s) for r in range(1, k + 1) for s in range(1, n - k + 1)]


def build_l_q(k: int, n: int) -> LaurentPolynomial:
    """Sum of label(v)/label(u) over covers u < v of [k]x[n-k] with a bottom labelled 1 and a top labelled q."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got ({k}, {n})")
    elems = poset_elements(k, n)
    variables = elems + ["q"]
    pos = {v: i for i, v in enumerate(variables)}
    V = len(variables)

    def term(upper, lower):
        e = [0] * V
        if upper is not None:
            e[pos[upper]] += 1
        if lower is not None:
            e[pos[lower]] -= 1
        return (1, e)

    terms = [term((1, 1), None)]
    for r, s in elems:
        if r < k:
            terms.append(term((r + 1, s), (r, s)))
        if s < n - k:
            terms.append(term((r, s + 1), (r, s)))
    terms.append(term("q", (k, n - k)))
    return LaurentPolynomial(variables, terms)


@dataclass(frozen=True)
class TorusPoint:
    """Labels x_{r,s} of [k]x[n-k], stored in lexicographic (r, s) order."""

    k: int
    n: int
    values: tuple[complex, ...]

    def __post_init__(self):
        vals = tuple(complex(v) for v in self.values)
        if len(vals) != self.k * (self.n - self.k):
            raise ValueError("wrong number of torus coordinates")
        if any(abs(v) <= DEFAULT_TOL.zero_eps for v in vals):
            raise ValueError("torus coordinates must be nonzero")
        object.__setattr__(self, "values", vals)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=complex)

    def as_dict(self) -> dict[tuple[int, int], complex]:
        return dict(zip(poset_elements(self.k, self.n), self.values))

    def __getitem__(self, rs) -> complex:
        r, s = rs
        return self.values[(r - 1) * (self.n - self.k) + (s - 1)]

    def to_json(self) -> dict[str, list[float]]:
        return {f"{r},{s}": [v.real, v.imag] for (r, s), v in self.as_dict().items()}


def torus_distance(x: TorusPoint, y: TorusPoint) -> float:
    a, b = x.as_array(), y.as_array()
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b)))) if a.size else 0.0


def _interval(a: int, b: int) -> list[int]:
    return list(range(a, b + 1))  # empty when a > b


def chart_subsets(k: int, n: int, r: int, s: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Numerator and denominator subsets of the torus coordinate x_{r,s}."""
    num = _interval(1, k - r) + _interval(k - r + s + 1, k + s)
    den = _interval(1, k - r + 1) + _interval(k - r + s + 1, k + s - 1)
    return tuple(num), tuple(den)


def chart_coords(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> TorusPoint:
    k, n = P.k, P.n
    vals = []
    for r, s in poset_elements(k, n):
        num, den = chart_subsets(k, n, r, s)
        a, b = P[num], P[den]
        for I, v in ((num, a), (den, b)):
            if abs(v) <= tol.zero_eps:
                raise ChartUndefined(I)
        vals.append(a / b)
    return TorusPoint(k, n, tuple(vals))


def l_q_eval(L: LaurentPolynomial, x: TorusPoint, q: complex) -> complex:
    return L(list(x.values) + [complex(q)])


def laurent_gradient(L: LaurentPolynomial) -> list[LaurentPolynomial]:
    """Exact partial derivatives with respect to every variable except q."""
    return [L.derivative(v) for v in L.variables if v != "q"]


def gradient_residual(L: LaurentPolynomial, x: TorusPoint, q: complex) -> float:
    wrt = list(range(len(x.values)))
    g, _ = L.gradient_hessian(list(x.values) + [complex(q)], wrt)
    return float(np.abs(g).max()) if g.size else 0.0


def superpotential_terms(k: int, n: int):
    """(numerator, denominator, uses_q) subsets of each ratio in F_q."""
    out = []
    for i in range(1, n + 1):
        if i == n - k:
            continue
        num = cyclic_interval(i + 1, k - 1, n) + ((i + k) % n + 1,)
        out.append((tuple(sorted(num)), cyclic_interval(i + 1, k, n), False))
    num = cyclic_interval(n - k + 1, k - 1, n) + (1,)
    out.append((tuple(sorted(num)), cyclic_interval(n - k + 1, k, n), True))
    return out


def in_pi_circle(P: PluckerVector, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """All n cyclic-interval coordinates are nonzero (canonical form)."""
    return all(abs(P[cyclic_interval(i, P.k, P.n)]) > tol.zero_eps for i in range(1, P.n + 1))


def f_q_eval(P: PluckerVector, q: complex, tol: TolerancePolicy = DEFAULT_TOL) -> complex:
    if not in_pi_circle(P, tol):
        raise OutsidePiCircle("a cyclic-interval Plücker coordinate vanishes")
    total = 0j
    for num, den, uses_q in superpotential_terms(P.k, P.n):
        term = P[num] / P[den]
        total += complex(q) * term if uses_q else term
    return total


@dataclass
class CriticalSearch:
    k: int
    n: int
    q: complex
    points: list[TorusPoint]
    residuals: list[float]
    starts: int
    dropped: int


def _newton(L: LaurentPolynomial, x0: np.ndarray, q: complex, target: float = 1e-10,
            max_iter: int = 100, halvings: int = 20) -> Optional[np.ndarray]:
    """Damped Newton on the gradient system in logarithmic coordinates x = exp(y).

    With y as unknowns the gradient is E^T m and the Hessian E^T diag(m) E,
    where m are the term values; zeros of the x-gradient are unchanged.
    """
    E = L._exps[:, :-1].astype(float)
    qexp = L._exps[:, -1]
    coeffs = L._coeffs * complex(q) ** qexp

    def system(y):
        m = coeffs * np.exp(E @ y)
        return E.T @ m, (E.T * m) @ E

    def x_gradient(y):
        g, _ = system(y)
        return g / np.exp(y)

    y = np.log(x0.astype(complex))
    with np.errstate(all="ignore"):
        g, H = system(y)
        gnorm = np.linalg.norm(g)
        for _ in range(max_iter):
            if np.abs(x_gradient(y)).max() < target:
                return np.exp(y)
            try:
                step = np.linalg.solve(H, -g)
            except np.linalg.LinAlgError:
                return None
            lam = 1.0
            for _ in range(halvings + 1):
                trial = y + lam * step
                if np.all(np.isfinite(trial)) and np.abs(trial.real).max() < 600:
                    g2, H2 = system(trial)
                    n2 = np.linalg.norm(g2)
                    if np.isfinite(n2) and n2 < gnorm:
                        y, g, H, gnorm = trial, g2, H2, n2
                        break
                lam /= 2
            else:
                break
        if np.all(np.isfinite(y)) and np.abs(x_gradient(y)).max() < target:
            return np.exp(y)
    return None


def dedupe_points(points: Sequence[TorusPoint], radius: float = 1e-6) -> list[TorusPoint]:
    """Deterministic sequential reduction over points sorted by coordinate tuple."""
    def key(p):
        coarse = tuple((round(v.real, 8), round(v.imag, 8)) for v in p.values)
        return coarse, tuple((v.real, v.imag) for v in p.values)

    kept: list[TorusPoint] = []
    for p in sorted(points, key=key):
        if all(torus_distance(p, other) > radius for other in kept):
            kept.append(p)
    return kept


def random_torus_start(V: int, rng: np.random.Generator) -> np.ndarray:
    return np.exp(rng.uniform(-1.0, 1.0, V) + 1j * rng.uniform(-math.pi, math.pi, V))


def find_critical_points(k: int, n: int, q: complex, extra_starts: int = 20, seed: int = 0,
                         tol: TolerancePolicy = DEFAULT_TOL) -> CriticalSearch:
    """Critical points of L_q in the torus by damped Newton with the exact Hessian.

    Starts are the chart coordinates of every chart-visible sigma_q fixed point
    followed by ``extra_starts`` seeded random torus points.
    """
    q = complex(q)
    if q == 0:
        raise ZeroParameter("q must be nonzero")
    L = build_l_q(k, n)
    V = k * (n - k)
    starts = []
    for fp in enumerate_fixed_points(k, n, q):
        try:
            starts.append(chart_coords(fp.point, tol).as_array())
        except ChartUndefined:
            pass
    rng = np.random.default_rng(seed)
    starts.extend(random_torus_start(V, rng) for _ in range(extra_starts))
    found, dropped = [], 0
    for x0 in starts:
        x = _newton(L, x0, q)
        if x is None:
            dropped += 1
            continue
        found.append(TorusPoint(k, n, tuple(x)))
    points = dedupe_points(found)
    residuals = [gradient_residual(L, p, q) for p in points]
    return CriticalSearch(k, n, q, points, residuals, len(starts), dropped)


@dataclass
class CorrespondenceReport:
    k: int
    n: int
    t: complex
    fixed_points: int
    visible: int
    invisible: int
    invisible_subsets: list[list[int]]
    max_fixed_gradient: float
    critical_points: int
    unmatched: int
    matches: list[Optional[list[int]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_fixed_gradient < 1e-8 and self.unmatched == 0

    def to_json(self) -> dict:
        return {
            "k": self.k, "n": self.n, "t": [self.t.real, self.t.imag],
            "fixed_points": self.fixed_points, "visible": self.visible, "invisible": self.invisible,
            "invisible_root_indices": self.invisible_subsets,
            "max_fixed_gradient": self.max_fixed_gradient,
            "critical_points": self.critical_points, "unmatched": self.unmatched,
            "passed": self.passed,
        }


def match_fixed_points(points: Sequence[TorusPoint], charts: Sequence[tuple[tuple[int, ...], TorusPoint]],
                       radius: float = 1e-6) -> list[Optional[list[int]]]:
    out = []
    for p in points:
        hit = None
        for J, y in charts:
            if torus_distance(p, y) <= radius:
                hit = list(J)
                break
        out.append(hit)
    return out


def verify_correspondence(k: int, n: int, t: complex, extra_starts: int = 20, seed: int = 0,
                          tol: TolerancePolicy = DEFAULT_TOL) -> CorrespondenceReport:
    """Check that chart-visible sigma_t fixed points are critical for L_t and vice versa."""
    t = complex(t)
    L = build_l_q(k, n)
    charts, invisible, worst = [], [], 0.0
    for fp in enumerate_fixed_points(k, n, t):
        try:
            x = chart_coords(fp.point, tol)
        except ChartUndefined:
            invisible.append(list(fp.roots.indices))
            continue
        charts.append((fp.roots.indices, x))
        worst = max(worst, gradient_residual(L, x, t))
    search = find_critical_points(k, n, t, extra_starts, seed, tol)
    matches = match_fixed_points(search.points, charts)
    return CorrespondenceReport(
        k, n, t, len(charts) + len(invisible), len(charts), len(invisible), invisible, worst,
        len(search.points), sum(m is None for m in matches), matches,
    )
