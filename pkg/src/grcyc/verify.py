"""Run configuration, the cross-module verification driver and the min/max table for V_0."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import islice
from typing import Callable

import numpy as np

from .cyclic_shift import (
    _flow_basis,
    deformed_plucker_formula,
    enumerate_fixed_points,
    fixed_residual,
    flow,
    is_positive_real,
    roots_and_s0,
)
from .dynamics import Tableau, promotion, promotion_order, rowmotion_fixed_check, semistandard_tableaux
from .errors import ChartUndefined, ConfigError, OutsidePiCircle
from .grassmann import (
    DEFAULT_TOL,
    PluckerVector,
    TolerancePolicy,
    plucker_from_matrix,
    projective_distance,
    random_point,
    subsets,
)
from .jsonio import complex_pair, round_floats
from .moment_curve import v0_matrix, v0_plucker_formula, v0_point
from .peterson import (
    gamma_embed,
    identity_point,
    is_nonnegative,
    partitions_in_box,
    schur_eval,
    schur_sine_formula,
    schur_via_plucker,
    toeplitz_u,
)
from .positivity import is_tnn, random_tnn_matrix
from .superpotential import build_l_q, chart_coords, f_q_eval, l_q_eval, verify_correspondence
from .twist import periodicity_check, right_twist, twist_fixed_candidates

MAX_N = 12

TWIST_EXAMPLE_IN = [[1, 1, 0, -4], [0, 2, 1, 3]]
TWIST_EXAMPLE_OUT = [[1, 1, 0.75, 0], [-0.5, 0, 1, 1 / 3]]
PROMOTION_EXAMPLE = (((1, 1, 2, 3), (2, 3, 4, 5)), 5, ((1, 1, 2, 4), (2, 3, 5, 5)))


@dataclass(frozen=True)
class RunConfig:
    k: int
    n: int
    t: complex = 1.0
    seed: int = 0
    tol: TolerancePolicy = DEFAULT_TOL
    output: str = "json"

    def __post_init__(self):
        if not (isinstance(self.k, int) and isinstance(self.n, int)):
            raise ConfigError("k and n must be integers")
        if not 1 <= self.k <= self.n <= MAX_N:
            raise ConfigError(f"need 1 <= k <= n <= {MAX_N}, got k={self.k}, n={self.n}")
        object.__setattr__(self, "t", complex(self.t))
        if self.t == 0:
            raise ConfigError("t must be nonzero")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.output not in ("json", "csv"):
            raise ConfigError(f"unknown output format {self.output!r}")

    def rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([int(self.seed), stream])

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "t": complex_pair(self.t), "seed": int(self.seed)}


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed), **self.details}


def _skipped(name: str, reason: str) -> CheckResult:
    return CheckResult(name, True, {"skipped": reason})


def check_fixed_points(cfg: RunConfig) -> CheckResult:
    fps = enumerate_fixed_points(cfg.k, cfg.n, cfg.t)
    worst = max(fixed_residual(fp.point, cfg.t) for fp in fps)
    tnn = [list(fp.roots.indices) for fp in fps if is_tnn(fp.point, cfg.tol)]
    if cfg.k == cfg.n:
        expected_tnn = 1  # Gr(n, n) is a single, trivially nonnegative point
    else:
        expected_tnn = 1 if is_positive_real(cfg.t) else 0
    ok = len(fps) == math.comb(cfg.n, cfg.k) and worst < 1e-9 and len(tnn) == expected_tnn
    return CheckResult("fixed_points", ok, {
        "count": len(fps), "expected": math.comb(cfg.n, cfg.k), "max_residual": worst,
        "tnn_root_indices": tnn, "expected_tnn": expected_tnn,
    })


def check_v0_formula(cfg: RunConfig) -> CheckResult:
    k, n = cfg.k, cfg.n
    if k == n:
        return _skipped("v0_formula", "k = n")
    d_matrix = projective_distance(plucker_from_matrix(v0_matrix(k, n)), v0_point(k, n))
    details = {"matrix_vs_formula": d_matrix}
    ok = d_matrix < 1e-9
    if is_positive_real(cfg.t):
        t = cfg.t.real
        tnn = [fp.point for fp in enumerate_fixed_points(k, n, t) if is_tnn(fp.point, cfg.tol)]
        formula = PluckerVector(k, n, np.array([deformed_plucker_formula(k, n, t, I) for I in subsets(k, n)]))
        d_def = projective_distance(tnn[0], formula) if len(tnn) == 1 else float("inf")
        details["tnn_vs_deformed_formula"] = d_def
        ok = ok and d_def < 1e-9
    return CheckResult("v0_formula", ok, details)


def check_embedding(cfg: RunConfig, samples: int = 20) -> CheckResult:
    k, n = cfg.k, cfg.n
    fps = enumerate_fixed_points(k, n, cfg.t)
    rng = cfg.rng(3)
    chosen = sorted(rng.choice(len(fps), size=min(samples, len(fps)), replace=False).tolist())
    worst = 0.0
    for i in chosen:
        S = fps[i].roots
        worst = max(worst, projective_distance(gamma_embed(toeplitz_u(k, n, S.roots)), fps[i].point))
    support = [list(I) for I in gamma_embed(identity_point(k, n)).support()]
    ok = worst < 1e-8 and support == [list(range(1, k + 1))]
    return CheckResult("embedding", ok, {"samples": len(chosen), "max_distance": worst, "identity_support": support})


def check_schur(cfg: RunConfig, max_subsets: int = 40) -> CheckResult:
    k, n = cfg.k, cfg.n
    lams = partitions_in_box(k, n)
    _, S0 = roots_and_s0(k, n, cfg.t)
    details: dict = {"partitions": len(lams)}
    ok = True
    if S0 is not None:
        worst = 0.0
        for lam in lams:
            a = schur_eval(lam, S0.roots)
            b = schur_via_plucker(lam, S0)
            c = schur_sine_formula(lam, cfg.t.real)
            worst = max(worst, abs(a - b) / max(1, abs(c)), abs(a - c) / max(1, abs(c)))
        details["triple_path_max_error"] = worst
        ok = worst < 1e-8
    fps = enumerate_fixed_points(k, n, cfg.t)
    rng = cfg.rng(4)
    if len(fps) <= max_subsets:
        chosen = list(range(len(fps)))
    else:
        chosen = sorted(rng.choice(len(fps), size=max_subsets, replace=False).tolist())
        if S0 is not None:
            s0_pos = [fp.roots.indices for fp in fps].index(S0.indices)
            chosen = sorted(set(chosen) | {s0_pos})
    positive = []
    for i in chosen:
        zs = fps[i].roots.roots
        if all(is_nonnegative(schur_eval(lam, zs)) for lam in lams):
            positive.append(list(fps[i].roots.indices))
    details.update({"subsets_checked": len(chosen), "nonnegative_root_indices": positive})
    if S0 is not None:
        ok = ok and positive == [list(S0.indices)]
    return CheckResult("schur", ok, details)


def check_superpotential(cfg: RunConfig, samples: int = 5) -> CheckResult:
    k, n = cfg.k, cfg.n
    if k == n:
        return _skipped("superpotential", "k = n")
    L = build_l_q(k, n)
    rng = cfg.rng(5)
    worst, used = 0.0, 0
    while used < samples:
        P = random_point(k, n, rng)
        try:
            lhs = l_q_eval(L, chart_coords(P, cfg.tol), cfg.t)
            rhs = f_q_eval(P, cfg.t, cfg.tol)
        except (ChartUndefined, OutsidePiCircle):
            continue
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        used += 1
    rep = verify_correspondence(k, n, cfg.t, extra_starts=10, seed=int(cfg.seed) % 2 ** 32, tol=cfg.tol)
    return CheckResult("superpotential", worst < 1e-8 and rep.passed,
                       {"pullback_max_error": worst, "correspondence": rep.to_json()})


def check_twist(cfg: RunConfig, samples: int = 5) -> CheckResult:
    k, n = cfg.k, cfg.n
    example = float(np.abs(right_twist(np.array(TWIST_EXAMPLE_IN, float)) - np.array(TWIST_EXAMPLE_OUT)).max())
    details: dict = {"example_max_error": example}
    ok = example < 1e-12
    if k < n:
        rng = cfg.rng(6)
        periodic = sum(periodicity_check(random_point(k, n, rng), cfg.tol) for _ in range(samples))
        cands = twist_fixed_candidates(k, n, cfg.t, cfg.tol)
        details.update({
            "periodicity_passed": periodic, "periodicity_samples": samples,
            "twist_fixed_root_indices": [list(fp.roots.indices) for fp in cands],
        })
        ok = ok and periodic == samples
    return CheckResult("twist", ok, details)


def check_promotion(cfg: RunConfig, limit: int = 200) -> CheckResult:
    rows, n, expected = PROMOTION_EXAMPLE
    got = promotion(Tableau(rows), n)
    details: dict = {"example": [list(r) for r in got.rows]}
    ok = got.rows == expected
    if cfg.k < cfg.n:
        tabs = list(islice(semistandard_tableaux(cfg.n - cfg.k, cfg.k, cfg.n), limit))
        bad = sum(cfg.n % promotion_order(T, cfg.n, check=False) != 0 for T in tabs)
        details.update({"tableaux_checked": len(tabs), "order_not_dividing_n": bad})
        ok = ok and bad == 0
    return CheckResult("promotion", ok, details)


def check_rowmotion(cfg: RunConfig) -> CheckResult:
    if cfg.k == cfg.n:
        return _skipped("rowmotion", "k = n")
    rep = rowmotion_fixed_check(cfg.k, cfg.n, cfg.t, starts=10, seed=int(cfg.seed) % 2 ** 32)
    return CheckResult("rowmotion", rep.passed, rep.to_json())


def flow_horizon(k: int, n: int) -> float:
    """A flow time after which the slowest transient has decayed by about e^-20."""
    sums = np.sort(_flow_basis(k, n)[2].real)[::-1]
    gap = sums[0] - sums[1]
    return max(40.0, 20.0 / gap)


def check_flow(cfg: RunConfig, samples: int = 3) -> CheckResult:
    k, n = cfg.k, cfg.n
    if k == n:
        return _skipped("flow", "k = n")
    rng = cfg.rng(9)
    V0 = v0_point(k, n)
    horizon = flow_horizon(k, n)
    times = np.linspace(0.0, horizon, 9)
    worst_final, monotone = 0.0, True
    for _ in range(samples):
        P = plucker_from_matrix(random_tnn_matrix(k, n, rng))
        dists = [projective_distance(flow(P, s), V0) for s in times]
        monotone &= all(b <= a + 1e-12 for a, b in zip(dists, dists[1:]))
        worst_final = max(worst_final, dists[-1])
    return CheckResult("flow", monotone and worst_final < 1e-6,
                       {"horizon": horizon, "final_max_distance": worst_final, "monotone": monotone})


CHECKS: list[Callable[[RunConfig], CheckResult]] = [
    check_fixed_points, check_v0_formula, check_embedding, check_schur, check_superpotential,
    check_twist, check_promotion, check_rowmotion, check_flow,
]


def run_verify_all(cfg: RunConfig) -> tuple[int, dict]:
    """Run every cross-check in a fixed order; exit status 0 iff all pass."""
    results = []
    for check in CHECKS:
        try:
            res = check(cfg)
        except Exception as exc:  # a crashing check is a failed check, not a crash of the driver
            res = CheckResult(check.__name__.removeprefix("check_"), False,
                              {"error": f"{type(exc).__name__}: {exc}"})
        results.append(res)
    passed = all(r.passed for r in results)
    report = {"config": cfg.to_json(), "passed": passed, "checks": [r.to_json() for r in results]}
    return (0 if passed else 1), round_floats(report, 6)


def dihedral_orbit(I, n: int) -> tuple[tuple[int, ...], ...]:
    orbit = set()
    for shift in range(n):
        rot = tuple(sorted((i - 1 + shift) % n + 1 for i in I))
        orbit.add(rot)
        orbit.add(tuple(sorted(n + 1 - i for i in rot)))
    return tuple(sorted(orbit))


def minmax_plucker(k: int, n: int, eps: float = 1e-12) -> dict:
    """Extreme Plücker coordinates of V_0 (sine-product normalisation), grouped by dihedral orbit."""
    if not 1 <= k < n:
        raise ConfigError(f"need 1 <= k < n, got ({k}, {n})")
    orbits: dict[tuple, float] = {}
    for I in subsets(k, n):
        orb = dihedral_orbit(I, n)
        if orb not in orbits:
            orbits[orb] = v0_plucker_formula(k, n, I)
    table = sorted(orbits.items(), key=lambda kv: (kv[1], kv[0]))
    lo, hi = table[0][1], table[-1][1]

    def fmt(orb):
        return [",".join(map(str, I)) for I in orb]

    return {
        "k": k, "n": n,
        "min": {"value": lo, "subsets": [s for orb, v in table if abs(v - lo) <= eps for s in fmt(orb)]},
        "max": {"value": hi, "subsets": [s for orb, v in table if abs(v - hi) <= eps for s in fmt(orb)]},
        "orbits": [{"value": v, "size": len(orb), "subsets": fmt(orb)} for orb, v in table],
    }
